#pragma once

#include "g2calc/derivations.hpp"
#include "g2calc/probe.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace g2calc {

// Fourier mode on the flat torus R⁷/(2πZ)⁷.
using Mode = std::array<int, kDim>;

std::string mode_string(const Mode& k);
// "1,0,-2,0,0,0,3"; throws std::invalid_argument.
Mode parse_mode(const std::string& text);
Q norm2(const Mode& k);
bool is_zero_mode(const Mode& k);
Vector mode_vector(const Mode& k);

// Operator on the graded exterior space with a fixed degree shift.
// block[j] maps Λ^j to Λ^{j+shift} (an empty matrix when out of range).
struct GradedOp {
    int shift = 0;
    std::array<MatQI, kDim + 1> block;

    static GradedOp zero(int shift);
    static GradedOp from_real(int shift, const std::array<MatQ, kDim + 1>& blocks);
    bool is_zero() const;
    GradedOp adjoint() const;
    Q max_residual() const;
    // 128×128 matrix on the direct sum in degree order.
    MatQI dense() const;
};

GradedOp operator+(const GradedOp& a, const GradedOp& b);
GradedOp operator-(const GradedOp& a, const GradedOp& b);
GradedOp operator*(const GradedOp& a, const GradedOp& b);
GradedOp operator*(const QI& s, const GradedOp& a);
// ∗ A ∗ with a sign (−1)^{sign_exponent(j)} on j-forms.
GradedOp star_conjugate(const GradedOp& a, int (*sign_exponent)(int));
// Wedge with a fixed real form.
GradedOp wedge_op(const Form& w);
GradedOp iota_op(const VectorValuedForm& k);

enum class ModeOp { D, Ds, Laplacian, IotaB, IotaK, LB, LK, LBs, LKs };
std::string mode_op_name(ModeOp op);
ModeOp parse_mode_op(const std::string& name);

// Names of the reference operators D^l_m, keyed "l_m" (e.g. "7_27").
const std::vector<std::string>& d_reference_names();
// Degree k of the source Λ^k_l where D^l_m is defined.
int d_reference_degree(const std::string& name);

struct ModeOperatorTable {
    Mode k{};
    GradedOp d, ds, lap, iB, iK, LB, LK, LBs, LKs;
    // Parameter-level reference operators D^l_m (m × l matrices).
    std::map<std::string, MatQI> D;

    const GradedOp& op(ModeOp which) const;
    const MatQI& ref(const std::string& name) const;
};

ModeOperatorTable build_mode_table(const Mode& k);

// Σ_k α_k e^{i k·x} with every α_k of the same degree.
struct SpectralForm {
    int degree = 0;
    std::map<Mode, CForm> terms;

    bool is_zero() const;
    friend bool operator==(const SpectralForm& a, const SpectralForm& b);
};

SpectralForm apply(ModeOp op, const SpectralForm& a);
// π^{k+1}_m ∘ d ∘ π^k_l mode by mode.
SpectralForm apply_d_component(int l, int m, const SpectralForm& a);
SpectralForm apply_projection(TypeLabel t, const SpectralForm& a);

enum class ComponentOp { D, LB, LK };
std::string component_op_name(ComponentOp op);
int component_shift(ComponentOp op);
// Nonzero arrows of the component diagrams of d, 𝓛_B and 𝓛_K.
const std::vector<Arrow>& component_figure(ComponentOp op);
std::vector<std::pair<TypeLabel, TypeLabel>> component_slots(ComponentOp op);
// The scalar relative to D^{from.l}_{to.l}; slots without a reference must vanish.
ProbeResult probe_component(const ModeOperatorTable& t, ComponentOp op, TypeLabel from, TypeLabel to);
ProbeResult probe_d_constant(TypeLabel from, TypeLabel to, const Mode& k);

// Deterministic sample: fixed axis-aligned and degenerate modes, then random ones.
std::vector<Mode> sample_modes(RationalRng& rng, int count, bool include_zero);

Report verify_component_figures(const std::vector<Mode>& modes);
Report verify_relations(const Mode& k);
Report verify_harmonic_one_forms(const Mode& k);
Report verify_symbol_regularity(const Vector& xi);
Report verify_commutation(const Mode& k);
Report verify_complex_figures(const Mode& k);

// Complex dimensions for one mode (or sums over modes) in one degree.
struct DegreeDims {
    std::int64_t ker_d = 0;
    std::int64_t im_d = 0;  // image of d arriving in this degree
    std::int64_t harmonic = 0;
    std::int64_t ker_LB = 0;
    std::int64_t im_LB_ker_LB = 0;
    std::int64_t H_phi = 0;
    std::int64_t ker_LK = 0;
    std::int64_t im_LK = 0;
    std::int64_t H_psi = 0;
    std::int64_t im_d_ker_LB = 0;
    std::int64_t im_ds_ker_LB = 0;
    std::int64_t im_d_ker_LB_ker_LBs = 0;
    std::int64_t im_ds_ker_LB_ker_LBs = 0;
    std::int64_t H_ker_LB = 0;      // cohomology of (ker 𝓛_B, d)
    std::int64_t H_ker_im_LB = 0;   // cohomology of (ker 𝓛_B ∩ im 𝓛_B, d)
    std::int64_t d_on_H_phi = 0;    // rank of d : H^j_φ → H^{j+1}_φ

    DegreeDims& operator+=(const DegreeDims& o);
    DegreeDims scaled(std::int64_t n) const;
    friend bool operator==(const DegreeDims& a, const DegreeDims& b);
};

struct ComplexSnapshot {
    std::array<DegreeDims, kDim + 1> deg{};
    friend bool operator==(const ComplexSnapshot& a, const ComplexSnapshot& b) { return a.deg == b.deg; }
};

ComplexSnapshot mode_cohomology(const Mode& k);

// Signed permutations of the frame preserving φ.
struct SignedPermutation {
    std::array<int, kDim> perm{};
    std::array<int, kDim> sign{};
    Mode act(const Mode& k) const;
};
const std::vector<SignedPermutation>& phi_symmetries();

struct TruncationLevel {
    int n = 0;
    std::int64_t modes = 0;  // zero mode plus one per ±k pair
    ComplexSnapshot dims;
};

struct TruncatedCohomology {
    int n = 0;
    std::int64_t orbits = 0;
    ComplexSnapshot nonzero_mode;  // common snapshot of every nonzero mode, if uniform
    bool uniform = false;
    std::vector<TruncationLevel> levels;  // n = 1..N
};

// Sums mode snapshots over max-norm balls, counting one mode per ±k pair.
// Distinct orbits of φ-symmetries (with k ↦ −k) are evaluated once;
// `threads` ≤ 0 reads G2CALC_THREADS.
TruncatedCohomology truncated_cohomology(int n, int threads = 0);

}  // namespace g2calc
