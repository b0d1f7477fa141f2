#include "g2calc/decomp.hpp"

#include "g2calc/g2.hpp"

#include <array>
#include <stdexcept>

namespace g2calc {

namespace {

constexpr std::array<TypeLabel, 14> kLabels{{
    {0, 1}, {1, 7}, {2, 7}, {2, 14}, {3, 1}, {3, 7}, {3, 27}, {4, 1},
    {4, 7}, {4, 27}, {5, 7}, {5, 14}, {6, 7}, {7, 1},
}};
constexpr int kLabelCount = static_cast<int>(kLabels.size());

void require_valid(TypeLabel t) {
    if (!valid_label(t)) throw std::invalid_argument("invalid type label " + t.str());
}

std::vector<Q> as_vector(const Form& a) { return a.coefficients(); }

MatQ columns_of(const std::vector<Form>& forms, int degree) {
    MatQ m(binomial(kDim, degree), static_cast<int>(forms.size()));
    for (int j = 0; j < m.cols(); ++j) m.set_col(j, forms[j].coefficients());
    return m;
}

const std::vector<Form>& interior_phi() {
    static const std::vector<Form> v = [] {
        std::vector<Form> out;
        for (int p = 1; p <= kDim; ++p) out.push_back(interior(basis_vector(p), standard_g2().phi));
        return out;
    }();
    return v;
}

const std::vector<Form>& interior_psi() {
    static const std::vector<Form> v = [] {
        std::vector<Form> out;
        for (int p = 1; p <= kDim; ++p) out.push_back(interior(basis_vector(p), standard_g2().psi));
        return out;
    }();
    return v;
}

Form ell(const MatQ& a, const std::vector<Form>& hooks) {
    if (a.rows() != kDim || a.cols() != kDim) throw std::invalid_argument("ell expects a 7x7 matrix");
    Form out(hooks[0].degree() + 1);
    for (int i = 0; i < kDim; ++i) {
        Form e = flat(basis_vector(i + 1));
        Form acc(hooks[0].degree());
        bool any = false;
        for (int p = 0; p < kDim; ++p) {
            if (sgn(a(i, p)) == 0) continue;
            acc += a(i, p) * hooks[p];
            any = true;
        }
        if (any) out += wedge(e, acc);
    }
    return out;
}

// Matrix of A ↦ ℓ(A) on row-major vectorized 7×7 matrices.
MatQ ell_matrix(bool psi) {
    int deg = psi ? 4 : 3;
    MatQ m(binomial(kDim, deg), kDim * kDim);
    for (int i = 0; i < kDim; ++i)
        for (int p = 0; p < kDim; ++p) {
            MatQ a(kDim, kDim);
            a(i, p) = 1;
            m.set_col(i * kDim + p, as_vector(psi ? ell_psi(a) : ell_phi(a)));
        }
    return m;
}

std::vector<Q> vectorize(const MatQ& a) {
    std::vector<Q> v;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) v.push_back(a(i, j));
    return v;
}

MatQ random_symmetric(RationalRng& rng) {
    MatQ h(kDim, kDim);
    for (int i = 0; i < kDim; ++i)
        for (int j = i; j < kDim; ++j) h(i, j) = h(j, i) = rng.rational();
    return h;
}

Q form_residual(const Form& a) {
    Q m;
    for (const auto& c : a.coefficients())
        if (abs(c) > m) m = abs(c);
    return m;
}

Q mat_residual(const MatQ& a) { return max_abs(a); }

// Projector of Λ^k_l, or the zero map when (k,l) is not a summand.
MatQ projector_or_zero(int k, int l) {
    TypeLabel t{k, l};
    int n = binomial(kDim, k);
    if (!valid_label(t)) return MatQ(n, n);
    return Decomposition::instance().projector(t);
}

MatQ sum_of_projectors(int k, std::initializer_list<int> ls) {
    int n = binomial(kDim, k);
    MatQ s(n, n);
    for (int l : ls) s += projector_or_zero(k, l);
    return s;
}

}  // namespace

std::string TypeLabel::str() const { return std::to_string(k) + "_" + std::to_string(l); }

bool valid_label(TypeLabel t) {
    for (int i = 0; i < kLabelCount; ++i)
        if (kLabels[i] == t) return true;
    return false;
}

std::vector<TypeLabel> labels_in_degree(int k) {
    std::vector<TypeLabel> out;
    for (int i = 0; i < kLabelCount; ++i)
        if (kLabels[i].k == k) out.push_back(kLabels[i]);
    return out;
}

std::vector<TypeLabel> all_labels() { return {kLabels.begin(), kLabels.begin() + kLabelCount}; }

TypeLabel parse_label(const std::string& s) {
    auto pos = s.find_first_of("_,");
    if (pos == std::string::npos) throw std::invalid_argument("type label must look like 3_27: " + s);
    TypeLabel t;
    try {
        std::size_t used = 0;
        t.k = std::stoi(s.substr(0, pos), &used);
        if (used != pos) throw std::invalid_argument(s);
        std::string rest = s.substr(pos + 1);
        t.l = std::stoi(rest, &used);
        if (used != rest.size()) throw std::invalid_argument(s);
    } catch (const std::logic_error&) {
        throw std::invalid_argument("type label must look like 3_27: " + s);
    }
    require_valid(t);
    return t;
}

SymTensor2::SymTensor2(MatQ h) : h_(std::move(h)) {
    if (h_.rows() != kDim || h_.cols() != kDim) throw std::invalid_argument("symmetric tensor must be 7x7");
    if (!(h_ == h_.transpose())) throw std::invalid_argument("tensor is not symmetric");
}

Q SymTensor2::trace() const {
    Q t;
    for (int i = 0; i < kDim; ++i) t += h_(i, i);
    return t;
}

SymTensor2 SymTensor2::trace_free() const {
    MatQ h0 = h_;
    Q t = trace() / kDim;
    for (int i = 0; i < kDim; ++i) h0(i, i) -= t;
    return SymTensor2(h0);
}

Form ell_phi(const MatQ& a) { return ell(a, interior_phi()); }
Form ell_psi(const MatQ& a) { return ell(a, interior_psi()); }

MatQ two_form_matrix(const Form& beta) {
    if (beta.degree() != 2) throw std::invalid_argument("two_form_matrix expects a 2-form");
    MatQ m(kDim, kDim);
    const auto& b = basis(2);
    for (int n = 0; n < beta.size(); ++n) {
        auto idx = b[n].indices();
        m(idx[0] - 1, idx[1] - 1) = beta[n];
        m(idx[1] - 1, idx[0] - 1) = -beta[n];
    }
    return m;
}

const std::vector<Form>& omega2_14_basis() {
    static const std::vector<Form> v = [] {
        MatQ ns = nullspace(wedge_matrix(standard_g2().psi, 2));
        std::vector<Form> out;
        for (int j = 0; j < ns.cols(); ++j) out.push_back(form_from(2, ns.col(j)));
        return out;
    }();
    return v;
}

const std::vector<MatQ>& traceless_symmetric_basis() {
    static const std::vector<MatQ> v = [] {
        std::vector<MatQ> out;
        for (int i = 0; i < kDim; ++i)
            for (int j = i + 1; j < kDim; ++j) {
                MatQ h(kDim, kDim);
                h(i, j) = h(j, i) = 1;
                out.push_back(h);
            }
        for (int i = 0; i < kDim - 1; ++i) {
            MatQ h(kDim, kDim);
            h(i, i) = 1;
            h(kDim - 1, kDim - 1) = -1;
            out.push_back(h);
        }
        return out;
    }();
    return v;
}

Decomposition::Decomposition() {
    const auto& g2 = standard_g2();
    auto basis_forms = [&](TypeLabel t) -> std::vector<Form> {
        std::vector<Form> out;
        switch (t.l) {
        case 1: {
            Form f = t.k == 0 ? scalar_form(1) : t.k == 3 ? g2.phi : t.k == 4 ? g2.psi : g2.vol;
            out.push_back(f);
            break;
        }
        case 7:
            for (int i = 1; i <= kDim; ++i) {
                Vector x = basis_vector(i);
                switch (t.k) {
                case 1: out.push_back(flat(x)); break;
                case 2: out.push_back(interior(x, g2.phi)); break;
                case 3: out.push_back(interior(x, g2.psi)); break;
                case 4: out.push_back(hodge_star(interior(x, g2.psi))); break;
                case 5: out.push_back(hodge_star(interior(x, g2.phi))); break;
                case 6: out.push_back(hodge_star(flat(x))); break;
                }
            }
            break;
        case 14:
            for (const auto& b : omega2_14_basis()) out.push_back(t.k == 2 ? b : hodge_star(b));
            break;
        case 27:
            for (const auto& h : traceless_symmetric_basis()) {
                Form f = ell_phi(h);
                out.push_back(t.k == 3 ? f : hodge_star(f));
            }
            break;
        }
        return out;
    };

    for (TypeLabel t : all_labels()) {
        Entry e;
        e.basis = columns_of(basis_forms(t), t.k);
        MatQ bt = e.basis.transpose();
        MatQ gram_inv = inverse(bt * e.basis);
        e.param_map = gram_inv * bt;
        e.projector = e.basis * e.param_map;
        entries_.emplace(t, std::move(e));
    }
}

const Decomposition& Decomposition::instance() {
    static const Decomposition d;
    return d;
}

const Decomposition::Entry& Decomposition::entry(TypeLabel t) const {
    require_valid(t);
    return entries_.at(t);
}

const MatQ& Decomposition::parameterization(TypeLabel t) const { return entry(t).basis; }
const MatQ& Decomposition::parameter_map(TypeLabel t) const { return entry(t).param_map; }
const MatQ& Decomposition::projector(TypeLabel t) const { return entry(t).projector; }

Form Decomposition::from_parameters(TypeLabel t, const std::vector<Q>& p) const {
    const auto& e = entry(t);
    if (static_cast<int>(p.size()) != e.basis.cols())
        throw std::invalid_argument("expected " + std::to_string(e.basis.cols()) + " parameters for " + t.str());
    return form_from(t.k, e.basis * p);
}

std::vector<Q> Decomposition::to_parameters(TypeLabel t, const Form& a) const {
    const auto& e = entry(t);
    if (a.degree() != t.k) throw std::invalid_argument("form degree does not match " + t.str());
    std::vector<Q> p = e.param_map * a.coefficients();
    if (e.basis * p != a.coefficients()) throw std::invalid_argument("form does not lie in " + t.str());
    return p;
}

bool Decomposition::contains(TypeLabel t, const Form& a) const {
    const auto& e = entry(t);
    if (a.degree() != t.k) return false;
    return e.projector * a.coefficients() == a.coefficients();
}

Form project(TypeLabel t, const Form& a) {
    require_valid(t);
    if (a.degree() != t.k) throw std::invalid_argument("form degree does not match " + t.str());
    return form_from(t.k, Decomposition::instance().projector(t) * a.coefficients());
}

Form identify(TypeLabel from, TypeLabel to, const Form& a) {
    require_valid(from);
    require_valid(to);
    if (from.l != to.l) throw std::invalid_argument("cannot identify " + from.str() + " with " + to.str());
    const auto& d = Decomposition::instance();
    return d.from_parameters(to, d.to_parameters(from, a));
}

Report verify_projectors() {
    Report r;
    r.suite = "projectors";
    const auto& d = Decomposition::instance();
    const auto& g2 = standard_g2();

    for (int k = 0; k <= kDim; ++k) {
        int n = binomial(kDim, k);
        MatQ total(n, n);
        auto labels = labels_in_degree(k);
        for (TypeLabel t : labels) {
            const MatQ& p = d.projector(t);
            total += p;
            r.add_residual("idempotent-" + t.str(), "P^2 = P on " + t.str(), mat_residual(p * p - p));
            r.add_residual("self-adjoint-" + t.str(), "P^T = P on " + t.str(), mat_residual(p.transpose() - p));
            int rk = rank(p);
            r.add("rank-" + t.str(), "rank of projector equals " + std::to_string(t.l), rk == t.l, std::to_string(rk));
            MatQ lb = d.parameter_map(t) * d.parameterization(t);
            r.add_residual("left-inverse-" + t.str(), "parameter map inverts parameterization on " + t.str(),
                           mat_residual(lb - MatQ::identity(t.l)));
            for (TypeLabel u : labels)
                if (u.l > t.l)
                    r.add_residual("orthogonal-" + t.str() + "-" + u.str(), "P_" + t.str() + " P_" + u.str() + " = 0",
                                   mat_residual(p * d.projector(u)));
        }
        r.add_residual("complete-" + std::to_string(k), "projectors sum to identity in degree " + std::to_string(k),
                       mat_residual(total - MatQ::identity(n)));

        MatQ star = star_matrix(k);
        for (int l : {1, 7, 14, 27}) {
            TypeLabel t{k, l};
            if (!valid_label(t)) continue;
            r.add_residual("star-commutes-" + t.str(), "star intertwines projectors of " + t.str(),
                           mat_residual(star * d.projector(t) - projector_or_zero(kDim - k, l) * star));
            r.add_residual("star-parameterization-" + t.str(), "parameterization of dual degree is star of " + t.str(),
                           mat_residual(star * d.parameterization(t) - d.parameterization({kDim - k, l})));
        }
        for (int w = 3; w <= 4; ++w) {
            if (k + w > kDim) continue;
            MatQ wm = wedge_matrix(w == 3 ? g2.phi : g2.psi, k);
            for (int l : {1, 7, 14, 27}) {
                std::string id = std::string(w == 3 ? "phi" : "psi") + "-wedge-commutes-" + std::to_string(k) + "_" +
                                 std::to_string(l);
                r.add_residual(id, "wedge with the structure form commutes with the l-projection",
                               mat_residual(wm * projector_or_zero(k, l) - projector_or_zero(k + w, l) * wm));
            }
        }
    }

    // Frame characterizations of the summands.
    auto check_kernel = [&](const std::string& id, const std::string& stmt, const MatQ& constraint, int k,
                            std::initializer_list<int> ls) {
        MatQ ns = nullspace(constraint);
        MatQ image = column_basis(sum_of_projectors(k, ls));
        bool ok = same_span(ns, image);
        r.add(id, stmt, ok, "kernel dim " + std::to_string(ns.cols()));
    };

    {
        MatQ m3psi(kDim, binomial(kDim, 3)), m3phi(1, binomial(kDim, 3));
        const auto& b3 = basis(3);
        for (int n = 0; n < static_cast<int>(b3.size()); ++n) {
            auto idx = b3[n].indices();
            int i = idx[0] - 1, j = idx[1] - 1, k = idx[2] - 1;
            for (int dd = 0; dd < kDim; ++dd) m3psi(dd, n) = 6 * g2.psi_t(i, j, k, dd);
            m3phi(0, n) = 6 * g2.phi_t(i, j, k);
        }
        check_kernel("omega3-1-27", "beta_ijk psi_ijkd = 0 characterizes 3_1 + 3_27", m3psi, 3, {1, 27});
        check_kernel("omega3-7-27", "beta_ijk phi_ijk = 0 characterizes 3_7 + 3_27", m3phi, 3, {7, 27});
        check_kernel("omega3-27-wedges", "beta^phi = 0 and beta^psi = 0 characterizes 3_27",
                     vstack(wedge_matrix(g2.phi, 3), wedge_matrix(g2.psi, 3)), 3, {27});
    }
    {
        MatQ m4phi(kDim, binomial(kDim, 4)), m4psi(1, binomial(kDim, 4));
        const auto& b4 = basis(4);
        for (int n = 0; n < static_cast<int>(b4.size()); ++n) {
            auto idx = b4[n].indices();
            // γ_ijkl φ_ijk with free index l, summed over all orderings of the remaining three.
            for (int l = 0; l < kDim; ++l) {
                int pos = -1;
                for (int s = 0; s < 4; ++s)
                    if (idx[s] - 1 == l) pos = s;
                if (pos < 0) continue;
                std::vector<int> rest;
                for (int s = 0; s < 4; ++s)
                    if (s != pos) rest.push_back(idx[s] - 1);
                int sign = ((3 - pos) % 2) ? -1 : 1;
                m4phi(l, n) = 6 * sign * g2.phi_t(rest[0], rest[1], rest[2]);
            }
            m4psi(0, n) = 24 * g2.psi_t(idx[0] - 1, idx[1] - 1, idx[2] - 1, idx[3] - 1);
        }
        check_kernel("omega4-1-27", "gamma_ijkl phi_ijk = 0 characterizes 4_1 + 4_27", m4phi, 4, {1, 27});
        check_kernel("omega4-7-27", "gamma_ijkl psi_ijkl = 0 characterizes 4_7 + 4_27", m4psi, 4, {7, 27});
    }
    {
        MatQ m2phi(kDim, binomial(kDim, 2));
        const auto& b2 = basis(2);
        for (int n = 0; n < static_cast<int>(b2.size()); ++n) {
            auto idx = b2[n].indices();
            for (int k = 0; k < kDim; ++k) m2phi(k, n) = 2 * g2.phi_t(idx[0] - 1, idx[1] - 1, k);
        }
        check_kernel("omega2-14-wedge", "beta^psi = 0 characterizes 2_14", wedge_matrix(g2.psi, 2), 2, {14});
        check_kernel("omega2-14-phi", "beta_pq phi_pqk = 0 characterizes 2_14", m2phi, 2, {14});

        MatQ lphi(binomial(kDim, 3), binomial(kDim, 2)), lpsi(binomial(kDim, 4), binomial(kDim, 2));
        for (int n = 0; n < static_cast<int>(b2.size()); ++n) {
            Form e(2);
            e[n] = 1;
            MatQ a = two_form_matrix(e);
            lphi.set_col(n, as_vector(ell_phi(a)));
            lpsi.set_col(n, as_vector(ell_psi(a)));
        }
        check_kernel("ell-phi-kernel-14", "ell_phi beta = 0 characterizes 2_14", lphi, 2, {14});
        check_kernel("ell-psi-kernel-14", "ell_psi beta = 0 characterizes 2_14", lpsi, 2, {14});
    }
    return r;
}

Report verify_ell_maps(RationalRng& rng, int samples) {
    Report r;
    r.suite = "ell";
    const auto& g2 = standard_g2();
    const auto& d = Decomposition::instance();
    MatQ g = MatQ::identity(kDim);

    r.add_residual("ell-phi-g", "ell_phi(g) = 3 phi", form_residual(ell_phi(g) - Q(3) * g2.phi));
    r.add_residual("ell-psi-g", "ell_psi(g) = 4 psi", form_residual(ell_psi(g) - Q(4) * g2.psi));

    MatQ s14(kDim * kDim, 14);
    for (int j = 0; j < 14; ++j) s14.set_col(j, vectorize(two_form_matrix(omega2_14_basis()[j])));
    for (bool psi : {false, true}) {
        std::string name = psi ? "ell-psi" : "ell-phi";
        int deg = psi ? 4 : 3;
        MatQ m = ell_matrix(psi);
        MatQ ker = nullspace(m);
        r.add(name + "-kernel", "kernel on 2-tensors is exactly 2_14", same_span(ker, s14),
              "kernel dim " + std::to_string(ker.cols()));

        MatQ s0(binomial(kDim, deg), 27), l7(binomial(kDim, deg), kDim);
        for (int j = 0; j < 27; ++j)
            s0.set_col(j, as_vector(psi ? ell_psi(traceless_symmetric_basis()[j]) : ell_phi(traceless_symmetric_basis()[j])));
        for (int i = 1; i <= kDim; ++i) {
            MatQ a = two_form_matrix(interior(basis_vector(i), g2.phi));
            l7.set_col(i - 1, as_vector(psi ? ell_psi(a) : ell_phi(a)));
        }
        const MatQ& p27 = d.projector({deg, 27});
        const MatQ& p7 = d.projector({deg, 7});
        r.add(name + "-s0-iso", "S_0 maps isomorphically onto the 27-component",
              rank(s0) == 27 && p27 * s0 == s0, "rank " + std::to_string(rank(s0)));
        r.add(name + "-omega27-iso", "2_7 maps isomorphically onto the 7-component",
              rank(l7) == kDim && p7 * l7 == l7, "rank " + std::to_string(rank(l7)));
    }

    Q worst_basis;
    for (const auto& h : traceless_symmetric_basis()) {
        Q res = form_residual(hodge_star(ell_phi(h)) + ell_psi(h));
        if (res > worst_basis) worst_basis = res;
    }
    r.add_residual("star-ell-basis", "star ell_phi h = -ell_psi h on the S_0 basis", worst_basis);
    Q worst_star, worst_kernel;
    for (int s = 0; s < samples; ++s) {
        SymTensor2 h0 = SymTensor2(random_symmetric(rng)).trace_free();
        Q res = form_residual(hodge_star(ell_phi(h0.matrix())) + ell_psi(h0.matrix()));
        if (res > worst_star) worst_star = res;
        Form beta(2);
        for (const auto& b : omega2_14_basis()) beta += rng.rational() * b;
        Q rk = form_residual(ell_phi(two_form_matrix(beta)));
        if (rk > worst_kernel) worst_kernel = rk;
    }
    r.add_residual("star-ell-random", "star ell_phi h = -ell_psi h for random trace-free h", worst_star);
    r.add_residual("ell-phi-random-14", "ell_phi beta = 0 for random beta in 2_14", worst_kernel);
    return r;
}

Report verify_symmetric_sums(RationalRng& rng, int random_h) {
    Report r;
    r.suite = "symmetric-sums";
    const auto& g2 = standard_g2();
    const auto& hp = interior_phi();
    const auto& hs = interior_psi();
    Q worst[3];
    for (int s = 0; s <= random_h; ++s) {
        MatQ h = s == random_h ? MatQ::identity(kDim) : random_symmetric(rng);
        SymTensor2 sym(h);
        Form a(4), b(5), c(6);
        for (int p = 0; p < kDim; ++p)
            for (int q = 0; q < kDim; ++q) {
                if (sgn(h(p, q)) == 0) continue;
                a += h(p, q) * wedge(hp[p], hp[q]);
                b += h(p, q) * wedge(hp[p], hs[q]);
                c += h(p, q) * wedge(hs[p], hs[q]);
            }
        Form expect = Q(-2) * sym.trace() * g2.psi + Q(2) * ell_psi(h);
        Q res[3] = {form_residual(a - expect), form_residual(b), form_residual(c)};
        for (int i = 0; i < 3; ++i)
            if (res[i] > worst[i]) worst[i] = res[i];
    }
    std::string suffix = " (" + std::to_string(random_h) + " random h and h = g)";
    r.add_residual("sym-phi-phi", "h^pq (e_p.phi)^(e_q.phi) = -2 Tr(h) psi + 2 ell_psi h" + suffix, worst[0]);
    r.add_residual("sym-phi-psi", "h^pq (e_p.phi)^(e_q.psi) = 0" + suffix, worst[1]);
    r.add_residual("sym-psi-psi", "h^pq (e_p.psi)^(e_q.psi) = 0" + suffix, worst[2]);
    return r;
}

}  // namespace g2calc
