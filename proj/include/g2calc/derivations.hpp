#pragma once

#include "g2calc/probe.hpp"

#include <array>
#include <optional>
#include <vector>

namespace g2calc {

// K = K^j ⊗ e_j with each K^j an r-form.
struct VectorValuedForm {
    int rank = 0;
    std::array<Form, kDim> comp;
    // The (r+1)-form η when K was obtained by raising its last index.
    std::optional<Form> lowered;

    // K^j = η(·, …, ·, e_j), i.e. K^j = (−1)^r e_j ⌟ η.
    static VectorValuedForm raise_last_index(const Form& eta);
};

const VectorValuedForm& cross_product_B();  // from φ, r = 2
const VectorValuedForm& associator_K();     // from ψ, r = 3

// For raised K: (−1)^r Σ_p (e_p⌟η) ∧ (e_p⌟α); otherwise K^j ∧ (e_j⌟α).
Form iota(const VectorValuedForm& k, const Form& a);
// Always K^j ∧ (e_j⌟α).
Form iota_algebraic(const VectorValuedForm& k, const Form& a);
// Metric adjoint; for raised K uses (−1)^{nk+rk+nr+n+1} ∗ι_K∗ with n = 7.
Form iota_adjoint(const VectorValuedForm& k, const Form& b);

// Matrix of ι_K : Λ^deg → Λ^{deg+r−1}.
MatQ iota_matrix(const VectorValuedForm& k, int deg);

enum class Derivation { IotaB, IotaK };

const VectorValuedForm& derivation_form(Derivation op);
std::string derivation_name(Derivation op);

// The scalar c with π_to ∘ ι ∘ (parameterization of from) = c · (parameterization of to).
// Throws std::invalid_argument when (from, to) is not a slot of the operator.
ProbeResult probe_constant(Derivation op, TypeLabel from, TypeLabel to);

// Nonzero arrows of the component diagrams; every other slot is zero.
const std::vector<Arrow>& iota_figure(Derivation op);
// All (from, to) label pairs the operator can connect.
std::vector<std::pair<TypeLabel, TypeLabel>> iota_slots(Derivation op);

Report verify_iota_figures();
Report verify_derivation_identities(RationalRng& rng, int samples);

}  // namespace g2calc
