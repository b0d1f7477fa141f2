#pragma once

#include "g2calc/exterior.hpp"
#include "g2calc/report.hpp"

#include <array>

namespace g2calc {

// φ, ψ = ∗φ, the metric (identity in the standard frame) and vol, with the
// fully antisymmetric component tensors φ_ijk and ψ_ijkl (indices 0..6).
struct G2Structure {
    Form phi;
    Form psi;
    Form vol;
    MatQ metric;
    std::array<int, 343> phi_c{};
    std::array<int, 2401> psi_c{};

    int phi_t(int i, int j, int k) const { return phi_c[(i * 7 + j) * 7 + k]; }
    int psi_t(int i, int j, int k, int l) const { return psi_c[((i * 7 + j) * 7 + k) * 7 + l]; }
};

// Builds the structure from a candidate 3-form without validating it.
G2Structure make_g2(const Form& phi);

// The built-in structure
//   φ = e^123 − e^167 − e^527 − e^563 − e^154 − e^264 − e^374,
// validated on first use; throws std::logic_error if any identity fails.
const G2Structure& standard_g2();

// Component of a k-form at an arbitrary (possibly unsorted) index tuple, 0-based.
Q component(const Form& a, std::initializer_list<int> idx);

// X × Y, read off from ∗(X ∧ Y ∧ ψ).
Vector cross(const Vector& x, const Vector& y);

// (X⌟φ)∧(Y⌟φ)∧φ + 6 g(X,Y) vol.
Form fundamental_residual(const G2Structure& g2, const Vector& x, const Vector& y);

Report verify_contractions(const G2Structure& g2);
Report verify_contractions();
// All 49 frame pairs plus `random_pairs` random rational pairs.
Report verify_fundamental(RationalRng& rng, int random_pairs);
// Frame vectors plus `random_vectors` random rational X.
Report verify_wedge_identities(RationalRng& rng, int random_vectors);
Report verify_cross_product(RationalRng& rng, int random_pairs);
// The four frame sums, for every m = 1..7.
Report verify_frame_sums();

}  // namespace g2calc
