#pragma once

#include "g2calc/linalg.hpp"
#include "g2calc/report.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace g2calc {

// Homogeneous element of a dga in basis coordinates.
struct Cochain {
    int degree = 0;
    std::vector<Q> c;

    bool is_zero() const;
    friend bool operator==(const Cochain& a, const Cochain& b) { return a.degree == b.degree && a.c == b.c; }
};

Cochain operator+(const Cochain& a, const Cochain& b);
Cochain operator-(const Cochain& a, const Cochain& b);
Cochain operator*(const Q& s, const Cochain& a);

// Finite-dimensional graded-commutative dga, degrees 0..top.
struct DGA {
    std::vector<std::vector<std::string>> names;  // basis names per degree
    std::vector<MatQ> d;                          // d[p] : A^p → A^{p+1}
    // mul[p][q][i] is left multiplication by basis element i of A^p, as A^q → A^{p+q}.
    std::vector<std::vector<std::vector<MatQ>>> mul;
    // Named algebra generators, used to parse expressions.
    std::vector<std::string> generator_names;
    std::vector<Cochain> generators;

    int top() const { return static_cast<int>(names.size()) - 1; }
    int dim(int p) const;
    Cochain zero(int p) const;
    Cochain unit() const;
    Cochain basis(int p, int i) const;
    Cochain multiply(const Cochain& a, const Cochain& b) const;
    Cochain differential(const Cochain& a) const;
    // Sum of terms "[coef[*]] g1^g2^…" over generator names; "1" is the unit.
    Cochain parse(const std::string& expr) const;
    std::string format(const Cochain& a) const;
};

// d² = 0, graded Leibniz, graded commutativity, associativity and unit on basis elements.
Report verify_dga(const DGA& a);

// Structure constants [x_i, x_j] = Σ_k c^k_ij x_k.
struct LieAlgebra {
    std::string name;
    std::vector<std::string> names;
    std::vector<Q> c;  // c[(k*n + i)*n + j]

    int n() const { return static_cast<int>(names.size()); }
    Q& at(int k, int i, int j) { return c[(static_cast<std::size_t>(k) * n() + i) * n() + j]; }
    const Q& at(int k, int i, int j) const { return c[(static_cast<std::size_t>(k) * n() + i) * n() + j]; }
    static LieAlgebra abelian(const std::vector<std::string>& names, std::string name = "abelian");
    // [x1, x2] = x3.
    static LieAlgebra heisenberg(std::string name = "heisenberg");
    // Adds [x_i, x_j] = Σ coeffs·x_k and the antisymmetric entry.
    void set_bracket(int i, int j, const std::vector<Q>& coeffs);
    // Largest |Jacobiator| over basis triples.
    Q jacobi_residual() const;
};

// Direct sum of two Lie algebras; generator names must be disjoint.
LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b);

// Λ•g* with dξ(X,Y) = −ξ([X,Y]), so d e^k = −Σ_{i<j} c^k_ij e^i∧e^j.
// Throws std::invalid_argument when the Jacobi identity fails.
DGA ce_complex(const LieAlgebra& g);

// Graded tensor product with (a⊗b)(a'⊗b') = (−1)^{|b||a'|} aa'⊗bb'.
DGA tensor_product(const DGA& a, const DGA& b);

// Compact oriented 4-manifold summand: Betti numbers and intersection form on H².
struct FourManifoldPart {
    std::string name;
    std::array<int, 5> betti{};
    MatQ form;  // b² × b² symmetric
};

// Formal model (H•(L), 0) of a connected sum of parts: H¹ × H³ is the Poincaré pairing,
// H² × H² is the intersection form, all other products of positive-degree classes vanish.
DGA four_manifold_model(const std::vector<FourManifoldPart>& parts);

// Degreewise linear map between dgas.
struct DgaMorphism {
    std::vector<MatQ> maps;  // maps[p] : A^p → B^p
    Cochain apply(const Cochain& a) const;
};
DgaMorphism include_left(const DGA& a, const DGA& b);   // a ↦ a⊗1
DgaMorphism project_left(const DGA& a, const DGA& b);   // a⊗b ↦ ε(b)·a
Report verify_morphism(const DgaMorphism& f, const DGA& from, const DGA& to);

struct CohomologyBasis {
    std::vector<MatQ> boundaries;       // columns span B^p
    std::vector<MatQ> representatives;  // columns: cocycles whose classes form a basis of H^p

    std::vector<int> betti() const;
    bool is_exact(const Cochain& z) const;
    // Coordinates of the class of a cocycle; throws std::invalid_argument if not closed.
    std::vector<Q> class_of(const DGA& a, const Cochain& z) const;
    Cochain representative(int p, int i) const;
};

CohomologyBasis cohomology(const DGA& a);

// Raised when a Massey product is not defined.
class MasseyUndefined : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct MasseyResult {
    int p = 0, q = 0, r = 0;
    Cochain a, b, c;
    Cochain f, g;               // d f = ab, d g = bc
    Cochain representative;     // f c − (−1)^p a g
    std::vector<Q> rep_class;   // coordinates in H^{p+q+r−1}
    MatQ indeterminacy;         // columns span H^{p+q−1}·H^r + H^p·H^{q+r−1} in the same coordinates
    bool vanishes = false;
};

// Throws MasseyUndefined when a class is not closed or ab, bc are not exact.
// With rng, random cocycles are added to the particular primitives f and g.
MasseyResult massey_triple(const DGA& a, const CohomologyBasis& h, const Cochain& x, const Cochain& y,
                           const Cochain& z, RationalRng* rng = nullptr);

// Whether the cohomology class of u lies in the indeterminacy of m.
bool in_indeterminacy(const DGA& a, const CohomologyBasis& h, const MasseyResult& m, const Cochain& u);

struct MasseyStability {
    int trials = 0;
    int flips = 0;         // verdicts differing from the first solve
    int class_moves = 0;   // representatives leaving the original coset
};

MasseyStability massey_stability(const DGA& a, const CohomologyBasis& h, const Cochain& x, const Cochain& y,
                                 const Cochain& z, RationalRng& rng, int trials);

// Every defined product of basis classes of H^p × H^q × H^r.
std::vector<MasseyResult> massey_sweep(const DGA& a, const CohomologyBasis& h, int p, int q, int r);

struct VanishingVerdict {
    bool guaranteed = false;
    std::string reason;
};

// Degree bookkeeping for a dga whose only nonzero differential is A^{k−1} → A^k;
// with full_holonomy the first Betti number vanishes and H⁶ = 0, H³·H⁴ = H⁷ (k must be 4).
VanishingVerdict almost_formal_vanishing(int p, int q, int r, int k, bool full_holonomy = false);

// b^k = Σ b^i_W b^{k−i}_L.
std::vector<int> kunneth_betti(const std::vector<int>& bw, const std::vector<int>& bl);
// H^k(M # N) = H^k(M) ⊕ H^k(N) for 0 < k < n.
std::vector<int> connected_sum_betti(const std::vector<int>& bm, const std::vector<int>& bn);

struct Inertia {
    int positive = 0;
    int negative = 0;
    int zero = 0;
    int signature() const { return positive - negative; }
};
Inertia inertia(const MatQ& symmetric);
bool is_even_form(const MatQ& q);
MatQ e8_form();
MatQ hyperbolic_form();
// Block sum of the named blocks "E8", "-E8", "H", "<n>" (rank-one form n).
MatQ form_from_blocks(const std::vector<std::string>& blocks);

struct ObstructionInput {
    std::string name;
    LieAlgebra w;  // Chevalley-Eilenberg model of the 3-manifold factor W
    std::vector<std::array<std::string, 3>> massey;  // classes on W, as expressions
    std::vector<FourManifoldPart> l_parts;            // L = connected sum of the parts
};

struct MasseyEvidence {
    std::array<std::string, 3> classes;
    std::array<int, 3> degrees{};
    bool defined = false;
    std::string error;           // when undefined
    bool vanishes_on_W = false;
    bool vanishes_on_M = false;  // after pulling back along M → W
    bool naturality = false;     // π* of the W product lies in the M product
    VanishingVerdict filter;     // torsion-free degree filter (k = 4)
    bool obstructs = false;
};

struct ObstructionReport {
    std::string name;
    std::vector<int> betti_W, betti_L, betti_M;
    int signature_L = 0;
    bool even_L = false;
    std::vector<Check> classical;
    std::vector<MasseyEvidence> massey;
    bool obstructed = false;
    std::string verdict;  // "NO" or "COMPATIBLE"
};

ObstructionReport obstruction_check(const ObstructionInput& in);

}  // namespace g2calc
