#include "g2calc/g2.hpp"

#include <cstdlib>
#include <stdexcept>

namespace g2calc {

namespace {

int perm_sign(std::vector<int> v) {
    int s = 1;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            if (v[i] == v[j]) return 0;
            if (v[i] > v[j]) s = -s;
        }
    return s;
}

Q component_of(const Form& a, const std::vector<int>& idx) {
    int s = perm_sign(idx);
    if (s == 0) return 0;
    std::uint8_t m = 0;
    for (int i : idx) m |= static_cast<std::uint8_t>(1u << i);
    const Q& c = a[basis_index(MultiIndex{m})];
    return s > 0 ? c : Q(-c);
}

int d(int i, int j) { return i == j ? 1 : 0; }

Form phi_candidate() {
    return monomial({1, 2, 3}) - monomial({1, 6, 7}) - monomial({5, 2, 7}) - monomial({5, 6, 3}) -
           monomial({1, 5, 4}) - monomial({2, 6, 4}) - monomial({3, 7, 4});
}

Q max_residual(Q current, const Q& r) {
    Q a = abs(r);
    return a > current ? a : current;
}

Q form_residual(const Form& f) {
    Q m;
    for (int i = 0; i < f.size(); ++i) m = max_residual(m, f[i]);
    return m;
}

Vector random_vector(RationalRng& rng) {
    Vector v;
    for (auto& x : v) x = rng.rational();
    return v;
}

}  // namespace

Q component(const Form& a, std::initializer_list<int> idx) {
    if (static_cast<int>(idx.size()) != a.degree()) throw std::invalid_argument("index count mismatch");
    return component_of(a, std::vector<int>(idx));
}

G2Structure make_g2(const Form& phi) {
    if (phi.degree() != 3) throw std::invalid_argument("phi must be a 3-form");
    G2Structure g;
    g.phi = phi;
    g.psi = hodge_star(phi);
    g.vol = volume_form();
    g.metric = MatQ::identity(kDim);
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j)
            for (int k = 0; k < 7; ++k) {
                g.phi_c[(i * 7 + j) * 7 + k] = static_cast<int>(component_of(phi, {i, j, k}).get_num().get_si());
                for (int l = 0; l < 7; ++l)
                    g.psi_c[((i * 7 + j) * 7 + k) * 7 + l] =
                        static_cast<int>(component_of(g.psi, {i, j, k, l}).get_num().get_si());
            }
    return g;
}

const G2Structure& standard_g2() {
    static const G2Structure g = [] {
        G2Structure s = make_g2(phi_candidate());
        Report r = verify_contractions(s);
        for (int i = 1; i <= 7; ++i)
            for (int j = 1; j <= 7; ++j)
                r.add_residual("fund", "", form_residual(fundamental_residual(s, basis_vector(i), basis_vector(j))));
        if (!r.passed()) throw std::logic_error("built-in 3-form fails the G2 identities");
        return s;
    }();
    return g;
}

Vector cross(const Vector& x, const Vector& y) {
    const auto& g = standard_g2();
    return sharp(hodge_star(wedge(wedge(flat(x), flat(y)), g.psi)));
}

Form fundamental_residual(const G2Structure& g2, const Vector& x, const Vector& y) {
    Form lhs = wedge(wedge(interior(x, g2.phi), interior(y, g2.phi)), g2.phi);
    return lhs + (Q(6) * dot(x, y)) * g2.vol;
}

Report verify_contractions() { return verify_contractions(standard_g2()); }

Report verify_contractions(const G2Structure& g) {
    Report r;
    r.suite = "contraction";
    auto P = [&](int i, int j, int k) { return g.phi_t(i, j, k); };
    auto S = [&](int i, int j, int k, int l) { return g.psi_t(i, j, k, l); };
    long res;

    res = 0;
    for (int i = 0; i < 7; ++i) for (int j = 0; j < 7; ++j) for (int a = 0; a < 7; ++a) for (int b = 0; b < 7; ++b) {
        long lhs = 0;
        for (int k = 0; k < 7; ++k) lhs += P(i, j, k) * P(a, b, k);
        long rhs = d(i, a) * d(j, b) - d(i, b) * d(j, a) - S(i, j, a, b);
        res = std::max(res, std::labs(lhs - rhs));
    }
    r.add_residual("phi-phi-1", "phi_ijk phi_abk = g_ia g_jb - g_ib g_ja - psi_ijab", res);

    res = 0;
    for (int i = 0; i < 7; ++i) for (int a = 0; a < 7; ++a) {
        long lhs = 0;
        for (int j = 0; j < 7; ++j) for (int k = 0; k < 7; ++k) lhs += P(i, j, k) * P(a, j, k);
        res = std::max(res, std::labs(lhs - 6 * d(i, a)));
    }
    r.add_residual("phi-phi-2", "phi_ijk phi_ajk = 6 g_ia", res);

    {
        long lhs = 0;
        for (int i = 0; i < 7; ++i) for (int j = 0; j < 7; ++j) for (int k = 0; k < 7; ++k) lhs += P(i, j, k) * P(i, j, k);
        r.add_residual("phi-phi-3", "phi_ijk phi_ijk = 42", lhs - 42);
    }

    res = 0;
    for (int i = 0; i < 7; ++i) for (int j = 0; j < 7; ++j) for (int a = 0; a < 7; ++a) for (int b = 0; b < 7; ++b)
    for (int c = 0; c < 7; ++c) {
        long lhs = 0;
        for (int k = 0; k < 7; ++k) lhs += P(i, j, k) * S(a, b, c, k);
        long rhs = d(i, a) * P(j, b, c) + d(i, b) * P(a, j, c) + d(i, c) * P(a, b, j) - d(a, j) * P(i, b, c) -
                   d(b, j) * P(a, i, c) - d(c, j) * P(a, b, i);
        res = std::max(res, std::labs(lhs - rhs));
    }
    r.add_residual("phi-psi-1", "phi_ijk psi_abck = g_ia phi_jbc + g_ib phi_ajc + g_ic phi_abj - g_aj phi_ibc - g_bj phi_aic - g_cj phi_abi", res);

    res = 0;
    for (int i = 0; i < 7; ++i) for (int a = 0; a < 7; ++a) for (int b = 0; b < 7; ++b) {
        long lhs = 0;
        for (int j = 0; j < 7; ++j) for (int k = 0; k < 7; ++k) lhs += P(i, j, k) * S(a, b, j, k);
        res = std::max(res, std::labs(lhs + 4 * P(i, a, b)));
    }
    r.add_residual("phi-psi-2", "phi_ijk psi_abjk = -4 phi_iab", res);

    res = 0;
    for (int a = 0; a < 7; ++a) {
        long lhs = 0;
        for (int i = 0; i < 7; ++i) for (int j = 0; j < 7; ++j) for (int k = 0; k < 7; ++k) lhs += P(i, j, k) * S(a, i, j, k);
        res = std::max(res, std::labs(lhs));
    }
    r.add_residual("phi-psi-3", "phi_ijk psi_aijk = 0", res);

    res = 0;
    for (int i = 0; i < 7; ++i) for (int j = 0; j < 7; ++j) for (int k = 0; k < 7; ++k)
    for (int a = 0; a < 7; ++a) for (int b = 0; b < 7; ++b) for (int c = 0; c < 7; ++c) {
        long lhs = 0;
        for (int l = 0; l < 7; ++l) lhs += S(i, j, k, l) * S(a, b, c, l);
        long rhs = -P(a, j, k) * P(i, b, c) - P(i, a, k) * P(j, b, c) - P(i, j, a) * P(k, b, c) +
                   d(i, a) * d(j, b) * d(k, c) + d(i, b) * d(j, c) * d(k, a) + d(i, c) * d(j, a) * d(k, b) -
                   d(i, a) * d(j, c) * d(k, b) - d(i, b) * d(j, a) * d(k, c) - d(i, c) * d(j, b) * d(k, a) -
                   d(i, a) * S(j, k, b, c) - d(j, a) * S(k, i, b, c) - d(k, a) * S(i, j, b, c) +
                   d(a, b) * S(i, j, k, c) - d(a, c) * S(i, j, k, b);
        res = std::max(res, std::labs(lhs - rhs));
    }
    r.add_residual("psi-psi-1", "psi_ijkl psi_abcl = (phi phi, g g g and g psi terms)", res);

    res = 0;
    for (int i = 0; i < 7; ++i) for (int j = 0; j < 7; ++j) for (int a = 0; a < 7; ++a) for (int b = 0; b < 7; ++b) {
        long lhs = 0;
        for (int k = 0; k < 7; ++k) for (int l = 0; l < 7; ++l) lhs += S(i, j, k, l) * S(a, b, k, l);
        long rhs = 4 * d(i, a) * d(j, b) - 4 * d(i, b) * d(j, a) - 2 * S(i, j, a, b);
        res = std::max(res, std::labs(lhs - rhs));
    }
    r.add_residual("psi-psi-2", "psi_ijkl psi_abkl = 4 g_ia g_jb - 4 g_ib g_ja - 2 psi_ijab", res);

    res = 0;
    for (int i = 0; i < 7; ++i) for (int a = 0; a < 7; ++a) {
        long lhs = 0;
        for (int j = 0; j < 7; ++j) for (int k = 0; k < 7; ++k) for (int l = 0; l < 7; ++l) lhs += S(i, j, k, l) * S(a, j, k, l);
        res = std::max(res, std::labs(lhs - 24 * d(i, a)));
    }
    r.add_residual("psi-psi-3", "psi_ijkl psi_ajkl = 24 g_ia", res);

    {
        long lhs = 0;
        for (int i = 0; i < 7; ++i) for (int j = 0; j < 7; ++j) for (int k = 0; k < 7; ++k) for (int l = 0; l < 7; ++l)
            lhs += S(i, j, k, l) * S(i, j, k, l);
        r.add_residual("psi-psi-4", "psi_ijkl psi_ijkl = 168", lhs - 168);
    }
    return r;
}

Report verify_fundamental(RationalRng& rng, int random_pairs) {
    const auto& g = standard_g2();
    Report r;
    r.suite = "fundamental";
    Q frame;
    for (int i = 1; i <= 7; ++i)
        for (int j = 1; j <= 7; ++j)
            frame = max_residual(frame, form_residual(fundamental_residual(g, basis_vector(i), basis_vector(j))));
    r.add_residual("frame-pairs", "(e_i⌟phi)∧(e_j⌟phi)∧phi = -6 g_ij vol for all 49 pairs", frame);
    Q random;
    for (int n = 0; n < random_pairs; ++n)
        random = max_residual(random, form_residual(fundamental_residual(g, random_vector(rng), random_vector(rng))));
    r.add_residual("random-pairs", "(X⌟phi)∧(Y⌟phi)∧phi = -6 g(X,Y) vol for " + std::to_string(random_pairs) + " random pairs",
                   random);
    return r;
}

Report verify_wedge_identities(RationalRng& rng, int random_vectors) {
    const auto& g = standard_g2();
    std::vector<Vector> xs;
    for (int i = 1; i <= 7; ++i) xs.push_back(basis_vector(i));
    for (int n = 0; n < random_vectors; ++n) xs.push_back(random_vector(rng));

    std::array<Q, 8> res;
    for (const auto& x : xs) {
        Form X = flat(x);
        Form xphi = interior(x, g.phi), xpsi = interior(x, g.psi);
        res[0] = max_residual(res[0], form_residual(hodge_star(wedge(g.phi, X)) - xpsi));
        res[1] = max_residual(res[1], form_residual(hodge_star(wedge(g.psi, X)) - xphi));
        res[2] = max_residual(res[2], form_residual(wedge(g.psi, hodge_star(wedge(g.phi, X)))));
        res[3] = max_residual(res[3], form_residual(wedge(g.phi, hodge_star(wedge(g.psi, X))) + Q(2) * wedge(g.psi, X)));
        res[4] = max_residual(res[4], form_residual(wedge(g.phi, xphi) + Q(2) * hodge_star(xphi)));
        res[5] = max_residual(res[5], form_residual(wedge(g.psi, xphi) - Q(3) * hodge_star(X)));
        res[6] = max_residual(res[6], form_residual(wedge(g.phi, xpsi) + Q(4) * hodge_star(X)));
        res[7] = max_residual(res[7], form_residual(wedge(g.psi, xpsi)));
    }
    static const char* names[8][2] = {
        {"star-phi-X", "*(phi∧X) = X⌟psi"},
        {"star-psi-X", "*(psi∧X) = X⌟phi"},
        {"psi-star-phi-X", "psi∧*(phi∧X) = 0"},
        {"phi-star-psi-X", "phi∧*(psi∧X) = -2 psi∧X"},
        {"phi-Xphi", "phi∧(X⌟phi) = -2 *(X⌟phi)"},
        {"psi-Xphi", "psi∧(X⌟phi) = 3 *X"},
        {"phi-Xpsi", "phi∧(X⌟psi) = -4 *X"},
        {"psi-Xpsi", "psi∧(X⌟psi) = 0"},
    };
    Report r;
    r.suite = "wedge-identities";
    for (int n = 0; n < 8; ++n) r.add_residual(names[n][0], names[n][1], res[n]);
    return r;
}

Report verify_cross_product(RationalRng& rng, int random_pairs) {
    const auto& g = standard_g2();
    Q agree, triple, anti;
    auto check = [&](const Vector& x, const Vector& y) {
        Vector c = cross(x, y);
        Form via_hook = interior(y, interior(x, g.phi));
        agree = max_residual(agree, form_residual(flat(c) - via_hook));
        Vector cc = cross(x, cross(x, y));
        Q xx = dot(x, x), xy = dot(x, y);
        for (int i = 0; i < kDim; ++i) triple = max_residual(triple, cc[i] + xx * y[i] - xy * x[i]);
        Vector yx = cross(y, x);
        for (int i = 0; i < kDim; ++i) anti = max_residual(anti, c[i] + yx[i]);
    };
    for (int i = 1; i <= 7; ++i)
        for (int j = 1; j <= 7; ++j) check(basis_vector(i), basis_vector(j));
    for (int n = 0; n < random_pairs; ++n) check(random_vector(rng), random_vector(rng));
    Report r;
    r.suite = "cross-product";
    r.add_residual("cross-two-formulas", "Y⌟X⌟phi = *(X∧Y∧psi)", agree);
    r.add_residual("cross-double", "X×(X×Y) = -g(X,X)Y + g(X,Y)X", triple);
    r.add_residual("cross-antisymmetric", "X×Y = -Y×X", anti);
    return r;
}

Report verify_frame_sums() {
    const auto& g = standard_g2();
    std::array<Q, 4> res;
    for (int m = 1; m <= 7; ++m) {
        Vector em = basis_vector(m);
        Form mphi = interior(em, g.phi), mpsi = interior(em, g.psi);
        Form s1(3), s2(4), s3(4), s4(5);
        for (int p = 1; p <= 7; ++p) {
            Vector ep = basis_vector(p);
            Form pphi = interior(ep, g.phi), ppsi = interior(ep, g.psi);
            s1 += wedge(pphi, interior(ep, mphi));
            s2 += wedge(pphi, interior(ep, mpsi));
            s3 += wedge(ppsi, interior(ep, mphi));
            s4 += wedge(ppsi, interior(ep, mpsi));
        }
        res[0] = max_residual(res[0], form_residual(s1 - Q(3) * mpsi));
        res[1] = max_residual(res[1], form_residual(s2 + Q(3) * hodge_star(mpsi)));
        res[2] = max_residual(res[2], form_residual(s3 + Q(3) * hodge_star(mpsi)));
        res[3] = max_residual(res[3], form_residual(s4 - Q(4) * hodge_star(mphi)));
    }
    Report r;
    r.suite = "frame-sums";
    r.add_residual("sum-phi-phi", "sum_p (e_p⌟phi)∧(e_p⌟e_m⌟phi) = 3 e_m⌟psi", res[0]);
    r.add_residual("sum-phi-psi", "sum_p (e_p⌟phi)∧(e_p⌟e_m⌟psi) = -3 *(e_m⌟psi)", res[1]);
    r.add_residual("sum-psi-phi", "sum_p (e_p⌟psi)∧(e_p⌟e_m⌟phi) = -3 *(e_m⌟psi)", res[2]);
    r.add_residual("sum-psi-psi", "sum_p (e_p⌟psi)∧(e_p⌟e_m⌟psi) = 4 *(e_m⌟phi)", res[3]);
    return r;
}

}  // namespace g2calc
