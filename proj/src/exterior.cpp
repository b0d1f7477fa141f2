#include "g2calc/exterior.hpp"

#include <algorithm>
#include <sstream>

namespace g2calc {

int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    int r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::vector<int> MultiIndex::indices() const {
    std::vector<int> v;
    for (int i = 1; i <= kDim; ++i)
        if (contains(i)) v.push_back(i);
    return v;
}

std::string MultiIndex::str() const {
    if (mask == 0) return "1";
    std::string s = "e^{";
    for (int i : indices()) s += std::to_string(i);
    return s + "}";
}

namespace {

struct BasisTables {
    std::array<std::vector<MultiIndex>, kDim + 1> by_degree;
    std::array<int, 128> index{};

    BasisTables() {
        for (int k = 0; k <= kDim; ++k) {
            std::vector<int> c(k);
            for (int i = 0; i < k; ++i) c[i] = i + 1;
            for (;;) {
                std::uint8_t m = 0;
                for (int i : c) m |= static_cast<std::uint8_t>(1u << (i - 1));
                index[m] = static_cast<int>(by_degree[k].size());
                by_degree[k].push_back(MultiIndex{m});
                int pos = k - 1;
                while (pos >= 0 && c[pos] == kDim - (k - 1 - pos)) --pos;
                if (pos < 0) break;
                ++c[pos];
                for (int i = pos + 1; i < k; ++i) c[i] = c[i - 1] + 1;
            }
        }
    }
};

const BasisTables& tables() {
    static const BasisTables t;
    return t;
}

const std::vector<MultiIndex> kEmpty;

}  // namespace

const std::vector<MultiIndex>& basis(int k) {
    if (k < 0 || k > kDim) return kEmpty;
    return tables().by_degree[k];
}

int basis_index(MultiIndex m) { return tables().index[m.mask & 0x7f]; }

int wedge_sign(std::uint8_t a, std::uint8_t b) {
    if (a & b) return 0;
    // count pairs (i in a, j in b) with i > j
    int inversions = 0;
    for (int j = 0; j < kDim; ++j)
        if ((b >> j) & 1u) inversions += __builtin_popcount(static_cast<unsigned>(a) >> (j + 1));
    return (inversions % 2) ? -1 : 1;
}

int interior_sign(int p, std::uint8_t mask) {
    if (!((mask >> (p - 1)) & 1u)) return 0;
    int before = __builtin_popcount(static_cast<unsigned>(mask) & ((1u << (p - 1)) - 1u));
    return (before % 2) ? -1 : 1;
}

int star_sign(std::uint8_t mask) {
    return wedge_sign(mask, static_cast<std::uint8_t>(~mask & 0x7f));
}

Vector basis_vector(int i) {
    Vector v;
    v[i - 1] = 1;
    return v;
}

Q dot(const Vector& x, const Vector& y) {
    Q s;
    for (int i = 0; i < kDim; ++i) s += x[i] * y[i];
    return s;
}

Form monomial(std::initializer_list<int> idx, const Q& c) {
    Form acc = scalar_form(c);
    for (int i : idx) acc = wedge(acc, flat(basis_vector(i)));
    return acc;
}

Form scalar_form(const Q& c) {
    Form f(0);
    f[0] = c;
    return f;
}

Form flat(const Vector& x) {
    Form f(1);
    for (int i = 0; i < kDim; ++i) f[i] = x[i];
    return f;
}

Vector sharp(const Form& one_form) {
    if (one_form.degree() != 1) throw std::invalid_argument("sharp expects a 1-form");
    Vector v;
    for (int i = 0; i < kDim; ++i) v[i] = one_form[i];
    return v;
}

Form volume_form() {
    Form f(kDim);
    f[0] = 1;
    return f;
}

Q inner(const Form& a, const Form& b) {
    if (a.degree() != b.degree()) throw std::invalid_argument("inner product of different degrees");
    Q s;
    for (int i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
    return s;
}

QI inner(const CForm& a, const CForm& b) {
    if (a.degree() != b.degree()) throw std::invalid_argument("inner product of different degrees");
    QI s;
    for (int i = 0; i < a.size(); ++i) s += a[i] * b[i].conj();
    return s;
}

CForm complexify(const Form& a) {
    CForm c(a.degree());
    for (int i = 0; i < a.size(); ++i) c[i] = QI(a[i]);
    return c;
}

Form form_from(int degree, const std::vector<Q>& coeffs) {
    Form f(degree);
    if (static_cast<int>(coeffs.size()) != f.size()) throw std::invalid_argument("coefficient count mismatch");
    for (int i = 0; i < f.size(); ++i) f[i] = coeffs[i];
    return f;
}

namespace {

template <class Fn>
MatQ operator_matrix(int k, int out_degree, Fn&& apply) {
    MatQ m(binomial(kDim, out_degree), binomial(kDim, k));
    for (int j = 0; j < m.cols(); ++j) {
        Form e(k);
        e[j] = 1;
        Form img = apply(e);
        for (int i = 0; i < m.rows(); ++i) m(i, j) = img[i];
    }
    return m;
}

}  // namespace

MatQ wedge_matrix(const Form& w, int k) {
    return operator_matrix(k, k + w.degree(), [&](const Form& e) { return wedge(w, e); });
}

MatQ interior_matrix(const Vector& x, int k) {
    return operator_matrix(k, k - 1, [&](const Form& e) { return interior(x, e); });
}

MatQ star_matrix(int k) {
    return operator_matrix(k, kDim - k, [](const Form& e) { return hodge_star(e); });
}

std::string to_string(const Form& a) {
    std::ostringstream os;
    bool first = true;
    const auto& b = basis(a.degree());
    for (int i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        if (!first) os << (sgn(a[i]) > 0 ? " + " : " - ");
        else if (sgn(a[i]) < 0) os << "-";
        Q mag = abs(a[i]);
        if (mag != 1 || b[i].mask == 0) os << mag.get_str() << (b[i].mask ? "*" : "");
        if (b[i].mask) os << b[i].str();
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace g2calc
