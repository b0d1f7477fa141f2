#include "g2calc/derivations.hpp"

#include "g2calc/g2.hpp"

#include <stdexcept>

namespace g2calc {

namespace {

Form random_form(RationalRng& rng, int deg) {
    Form f(deg);
    for (int i = 0; i < f.size(); ++i) f[i] = rng.rational();
    return f;
}

Vector random_vector(RationalRng& rng) {
    Vector v;
    for (auto& x : v) x = rng.rational();
    return v;
}

Q form_residual(const Form& a) {
    Q m;
    for (const auto& c : a.coefficients())
        if (abs(c) > m) m = abs(c);
    return m;
}

void track(Q& worst, const Q& v) {
    if (v > worst) worst = v;
}

}  // namespace

VectorValuedForm VectorValuedForm::raise_last_index(const Form& eta) {
    VectorValuedForm k;
    k.rank = eta.degree() - 1;
    for (int j = 0; j < kDim; ++j) {
        Form c = interior(basis_vector(j + 1), eta);
        k.comp[j] = (k.rank % 2) ? -c : c;
    }
    k.lowered = eta;
    return k;
}

const VectorValuedForm& cross_product_B() {
    static const VectorValuedForm b = VectorValuedForm::raise_last_index(standard_g2().phi);
    return b;
}

const VectorValuedForm& associator_K() {
    static const VectorValuedForm k = VectorValuedForm::raise_last_index(standard_g2().psi);
    return k;
}

Form iota_algebraic(const VectorValuedForm& k, const Form& a) {
    Form out(a.degree() + k.rank - 1);
    if (out.size() == 0 || a.degree() == 0) return out;
    for (int j = 0; j < kDim; ++j) out += wedge(k.comp[j], interior(basis_vector(j + 1), a));
    return out;
}

Form iota(const VectorValuedForm& k, const Form& a) {
    if (!k.lowered) return iota_algebraic(k, a);
    Form out(a.degree() + k.rank - 1);
    if (out.size() == 0 || a.degree() == 0) return out;
    for (int p = 1; p <= kDim; ++p) {
        Vector e = basis_vector(p);
        out += wedge(interior(e, *k.lowered), interior(e, a));
    }
    return (k.rank % 2) ? -out : out;
}

MatQ iota_matrix(const VectorValuedForm& k, int deg) {
    MatQ m(binomial(kDim, deg + k.rank - 1), binomial(kDim, deg));
    for (int j = 0; j < m.cols(); ++j) {
        Form e(deg);
        e[j] = 1;
        m.set_col(j, iota(k, e).coefficients());
    }
    return m;
}

Form iota_adjoint(const VectorValuedForm& k, const Form& b) {
    int deg = b.degree();
    if (k.lowered) {
        int n = kDim, r = k.rank;
        int e = n * deg + r * deg + n * r + n + 1;
        Form out = hodge_star(iota(k, hodge_star(b)));
        return (e % 2) ? -out : out;
    }
    int src = deg - k.rank + 1;
    Form out(src);
    if (out.size() == 0) return out;
    return form_from(src, iota_matrix(k, src).transpose() * b.coefficients());
}

const VectorValuedForm& derivation_form(Derivation op) {
    return op == Derivation::IotaB ? cross_product_B() : associator_K();
}

std::string derivation_name(Derivation op) { return op == Derivation::IotaB ? "iota_B" : "iota_K"; }

std::vector<std::pair<TypeLabel, TypeLabel>> iota_slots(Derivation op) {
    int shift = derivation_form(op).rank - 1;
    std::vector<std::pair<TypeLabel, TypeLabel>> out;
    for (TypeLabel from : all_labels())
        for (TypeLabel to : labels_in_degree(from.k + shift)) out.emplace_back(from, to);
    return out;
}

ProbeResult probe_constant(Derivation op, TypeLabel from, TypeLabel to) {
    const auto& k = derivation_form(op);
    if (!valid_label(from) || !valid_label(to) || to.k != from.k + k.rank - 1)
        throw std::invalid_argument("no " + derivation_name(op) + " slot " + from.str() + " -> " + to.str());
    MatQ comp = parameter_component(iota_matrix(k, from.k), from, to);
    MatQI reference;
    if (from.l == to.l) reference = MatQI::real(MatQ::identity(from.l));
    return probe_ratio(MatQI::real(comp), reference);
}

const std::vector<Arrow>& iota_figure(Derivation op) {
    static const std::vector<Arrow> b{
        {{1, 7}, {2, 7}, 1, ""},   {{2, 7}, {3, 7}, 3, ""},   {{3, 1}, {4, 1}, -6, ""},
        {{3, 7}, {4, 7}, -3, ""},  {{3, 27}, {4, 27}, 1, ""}, {{4, 7}, {5, 7}, -4, ""},
        {{5, 7}, {6, 7}, 3, ""},
    };
    static const std::vector<Arrow> k{
        {{1, 7}, {3, 7}, -1, ""},
        {{2, 7}, {4, 7}, 3, ""},
        {{3, 7}, {5, 7}, -4, ""},
        {{4, 7}, {6, 7}, 4, ""},
    };
    return op == Derivation::IotaB ? b : k;
}

Report verify_iota_figures() {
    Report r;
    r.suite = "derivation-components";
    for (Derivation op : {Derivation::IotaB, Derivation::IotaK}) {
        const auto& fig = iota_figure(op);
        for (auto [from, to] : iota_slots(op)) {
            std::optional<Q> expected;
            for (const auto& a : fig)
                if (a.from == from && a.to == to) expected = a.c;
            ProbeResult got = probe_constant(op, from, to);
            std::string id = derivation_name(op) + ":" + from.str() + "->" + to.str();
            std::string stmt = expected ? "component is " + to_string(*expected) + " times the identification"
                                        : "component vanishes";
            r.add(id, stmt, got.matches(expected), got.str());
        }
    }
    return r;
}

Report verify_derivation_identities(RationalRng& rng, int samples) {
    Report r;
    r.suite = "derivations";
    const auto& g2 = standard_g2();
    const auto& b = cross_product_B();
    const auto& k = associator_K();

    r.add_residual("iota-B-function", "iota_B f = 0", form_residual(iota(b, scalar_form(1))));
    r.add_residual("iota-K-function", "iota_K f = 0", form_residual(iota(k, scalar_form(1))));
    r.add_residual("iota-B-phi", "iota_B phi = -6 psi", form_residual(iota(b, g2.phi) + Q(6) * g2.psi));
    r.add_residual("iota-B-psi", "iota_B psi = 0", form_residual(iota(b, g2.psi)));
    r.add_residual("iota-K-phi", "iota_K phi = 0", form_residual(iota(k, g2.phi)));
    r.add_residual("iota-K-psi", "iota_K psi = 0", form_residual(iota(k, g2.psi)));

    Q w[6], law[2], alg[2], pair[2];
    for (int s = 0; s < samples + kDim; ++s) {
        Vector x = s < kDim ? basis_vector(s + 1) : random_vector(rng);
        Form xf = flat(x), xphi = interior(x, g2.phi), xpsi = interior(x, g2.psi);
        track(w[0], form_residual(iota(b, xf) - xphi));
        track(w[1], form_residual(iota(k, xf) + xpsi));
        track(w[2], form_residual(iota(b, xphi) - Q(3) * xpsi));
        track(w[3], form_residual(iota(k, xphi) - Q(3) * hodge_star(xpsi)));
        track(w[4], form_residual(iota(b, xpsi) + Q(3) * hodge_star(xpsi)));
        track(w[5], form_residual(iota(k, xpsi) + Q(4) * hodge_star(xphi)));
    }
    r.add_residual("iota-B-vector", "iota_B X = X.phi", w[0]);
    r.add_residual("iota-K-vector", "iota_K X = -X.psi", w[1]);
    r.add_residual("iota-B-Xphi", "iota_B(X.phi) = 3 X.psi", w[2]);
    r.add_residual("iota-K-Xphi", "iota_K(X.phi) = 3 *(X.psi)", w[3]);
    r.add_residual("iota-B-Xpsi", "iota_B(X.psi) = -3 *(X.psi)", w[4]);
    r.add_residual("iota-K-Xpsi", "iota_K(X.psi) = -4 *(X.phi)", w[5]);

    Q w14;
    for (const auto& beta : omega2_14_basis()) {
        track(w14, form_residual(iota(b, beta)));
        track(w14, form_residual(iota(k, beta)));
    }
    r.add_residual("iota-omega2-14", "iota_B and iota_K vanish on 2_14", w14);

    for (int s = 0; s < samples; ++s) {
        int p = static_cast<int>(rng.integer(0, kDim)), q = static_cast<int>(rng.integer(0, kDim));
        Form a = random_form(rng, p), c = random_form(rng, q);
        for (int t = 0; t < 2; ++t) {
            const auto& kk = t == 0 ? b : k;
            int sign = ((kk.rank - 1) * p) % 2 ? -1 : 1;
            Form lhs = iota(kk, wedge(a, c));
            Form rhs = wedge(iota(kk, a), c) + Q(sign) * wedge(a, iota(kk, c));
            track(law[t], form_residual(lhs - rhs));
            track(alg[t], form_residual(iota(kk, a) - iota_algebraic(kk, a)));
            int deg_b = p + kk.rank - 1;
            if (deg_b <= kDim) {
                Form bb = random_form(rng, deg_b);
                Q diff = inner(iota(kk, a), bb) - inner(a, iota_adjoint(kk, bb));
                track(pair[t], abs(diff));
            }
        }
    }
    r.add_residual("derivation-law-B", "iota_B is a derivation of degree 1", law[0]);
    r.add_residual("derivation-law-K", "iota_K is a derivation of degree 2", law[1]);
    r.add_residual("frame-formula-B", "frame and algebraic formulas agree for iota_B", alg[0]);
    r.add_residual("frame-formula-K", "frame and algebraic formulas agree for iota_K", alg[1]);
    r.add_residual("adjoint-pairing-B", "<iota_B a, b> = <a, iota_B* b>", pair[0]);
    r.add_residual("adjoint-pairing-K", "<iota_K a, b> = <a, iota_K* b>", pair[1]);

    // Adjoint matrices against the transpose, and the ∗-conjugation forms.
    Q adj[2], conj[2];
    for (int t = 0; t < 2; ++t) {
        const auto& kk = t == 0 ? b : k;
        for (int deg = 0; deg + kk.rank - 1 <= kDim; ++deg) {
            int out = deg + kk.rank - 1;
            MatQ m = iota_matrix(kk, deg);
            MatQ a(m.cols(), m.rows());
            for (int j = 0; j < m.rows(); ++j) {
                Form e(out);
                e[j] = 1;
                a.set_col(j, iota_adjoint(kk, e).coefficients());
            }
            track(adj[t], max_abs(a - m.transpose()));
            MatQ starred = star_matrix(kDim - out + kk.rank - 1) * iota_matrix(kk, kDim - out) * star_matrix(out);
            Q sign = t == 0 ? Q(out % 2 ? -1 : 1) : Q(-1);
            track(conj[t], max_abs(a - sign * starred));
        }
    }
    r.add_residual("adjoint-matrix-B", "iota_B* is the transpose of iota_B in every degree", adj[0]);
    r.add_residual("adjoint-matrix-K", "iota_K* is the transpose of iota_K in every degree", adj[1]);
    r.add_residual("adjoint-star-B", "iota_B* = (-1)^k * iota_B * on k-forms", conj[0]);
    r.add_residual("adjoint-star-K", "iota_K* = -* iota_K * on k-forms", conj[1]);

    Q top_b, top_k;
    for (int deg : {6, 7}) track(top_b, max_abs(iota_matrix(b, deg)));
    for (int deg : {5, 6, 7}) track(top_k, max_abs(iota_matrix(k, deg)));
    r.add_residual("iota-B-top", "iota_B vanishes on 6- and 7-forms", top_b);
    r.add_residual("iota-K-top", "iota_K vanishes on 5-, 6- and 7-forms", top_k);
    return r;
}

}  // namespace g2calc
