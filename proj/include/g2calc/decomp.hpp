#pragma once

#include "g2calc/exterior.hpp"
#include "g2calc/report.hpp"

#include <map>
#include <string>
#include <vector>

namespace g2calc {

// Summand Λ^k_l of the type decomposition.
struct TypeLabel {
    int k = 0;
    int l = 1;

    std::string str() const;  // "3_27"
    friend bool operator==(TypeLabel a, TypeLabel b) { return a.k == b.k && a.l == b.l; }
    friend bool operator<(TypeLabel a, TypeLabel b) { return a.k != b.k ? a.k < b.k : a.l < b.l; }
};

bool valid_label(TypeLabel t);
std::vector<TypeLabel> labels_in_degree(int k);
std::vector<TypeLabel> all_labels();
// Parses "3_27" (also accepts "3,27").
TypeLabel parse_label(const std::string& s);

// Symmetric 7×7 tensor with its trace decomposition h = (Tr h / 7) g + h⁰.
class SymTensor2 {
public:
    explicit SymTensor2(MatQ h);
    const MatQ& matrix() const { return h_; }
    Q trace() const;
    SymTensor2 trace_free() const;

private:
    MatQ h_;
};

// ℓ_φ A = A_ip e^i ∧ (e_p ⌟ φ), ℓ_ψ A = A_ip e^i ∧ (e_p ⌟ ψ).
Form ell_phi(const MatQ& a);
Form ell_psi(const MatQ& a);

// Skew matrix β_ij of a 2-form.
MatQ two_form_matrix(const Form& beta);

// Fixed bases of the parameter spaces for l = 14 and l = 27.
const std::vector<Form>& omega2_14_basis();
const std::vector<MatQ>& traceless_symmetric_basis();

// Orthogonal projectors and the chosen (non-isometric) identifications.
class Decomposition {
public:
    static const Decomposition& instance();

    // Columns: images of the parameter basis (dimension l) under the identification.
    const MatQ& parameterization(TypeLabel t) const;
    // (BᵀB)⁻¹Bᵀ; kills the orthogonal complement of Λ^k_l.
    const MatQ& parameter_map(TypeLabel t) const;
    const MatQ& projector(TypeLabel t) const;

    Form from_parameters(TypeLabel t, const std::vector<Q>& p) const;
    // Throws std::invalid_argument if a ∉ Λ^k_l.
    std::vector<Q> to_parameters(TypeLabel t, const Form& a) const;
    bool contains(TypeLabel t, const Form& a) const;

private:
    Decomposition();
    struct Entry {
        MatQ basis;
        MatQ param_map;
        MatQ projector;
    };
    std::map<TypeLabel, Entry> entries_;
    const Entry& entry(TypeLabel t) const;
};

Form project(TypeLabel t, const Form& a);
// Transports a ∈ Λ^k_l to Λ^k'_l through the common parameter.
Form identify(TypeLabel from, TypeLabel to, const Form& a);

Report verify_projectors();
Report verify_ell_maps(RationalRng& rng, int samples);
// The three identities for `random_h` random symmetric h and for h = g.
Report verify_symmetric_sums(RationalRng& rng, int random_h);

}  // namespace g2calc
