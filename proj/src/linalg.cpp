#include "g2calc/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace g2calc {

MatQ MatQ::identity(int n) {
    MatQ m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

MatQ MatQ::column(const std::vector<Q>& v) {
    MatQ m(static_cast<int>(v.size()), 1);
    for (int i = 0; i < m.rows(); ++i) m(i, 0) = v[i];
    return m;
}

std::vector<Q> MatQ::col(int j) const {
    std::vector<Q> v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void MatQ::set_col(int j, const std::vector<Q>& v) {
    for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

bool MatQ::is_zero() const {
    for (const auto& x : a_)
        if (sgn(x) != 0) return false;
    return true;
}

MatQ MatQ::transpose() const {
    MatQ t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

MatQ& MatQ::operator+=(const MatQ& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch in +");
    for (std::size_t k = 0; k < a_.size(); ++k)
        if (sgn(o.a_[k]) != 0) a_[k] += o.a_[k];
    return *this;
}

MatQ& MatQ::operator-=(const MatQ& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch in -");
    for (std::size_t k = 0; k < a_.size(); ++k)
        if (sgn(o.a_[k]) != 0) a_[k] -= o.a_[k];
    return *this;
}

MatQ& MatQ::operator*=(const Q& s) {
    for (auto& x : a_)
        if (sgn(x) != 0) x *= s;
    return *this;
}

MatQ operator+(MatQ a, const MatQ& b) { return a += b; }
MatQ operator-(MatQ a, const MatQ& b) { return a -= b; }
MatQ operator-(MatQ a) { return a *= Q(-1); }
MatQ operator*(const Q& s, MatQ a) { return a *= s; }

MatQ operator*(const MatQ& a, const MatQ& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("shape mismatch in *");
    MatQ c(a.rows(), b.cols());
    Q t;
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Q& x = a(i, k);
            if (sgn(x) == 0) continue;
            for (int j = 0; j < b.cols(); ++j) {
                const Q& y = b(k, j);
                if (sgn(y) == 0) continue;
                t = x * y;
                c(i, j) += t;
            }
        }
    return c;
}

std::vector<Q> operator*(const MatQ& a, const std::vector<Q>& v) {
    if (a.cols() != static_cast<int>(v.size())) throw std::invalid_argument("shape mismatch in M*v");
    std::vector<Q> out(a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (sgn(a(i, j)) != 0 && sgn(v[j]) != 0) out[i] += a(i, j) * v[j];
    return out;
}

MatQ hstack(const MatQ& a, const MatQ& b) {
    if (a.cols() == 0) return b;
    if (b.cols() == 0) return a;
    if (a.rows() != b.rows()) throw std::invalid_argument("shape mismatch in hstack");
    MatQ m(a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
        for (int j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
    }
    return m;
}

MatQ vstack(const MatQ& a, const MatQ& b) {
    if (a.rows() == 0) return b;
    if (b.rows() == 0) return a;
    if (a.cols() != b.cols()) throw std::invalid_argument("shape mismatch in vstack");
    MatQ m(a.rows() + b.rows(), a.cols());
    for (int j = 0; j < a.cols(); ++j) {
        for (int i = 0; i < a.rows(); ++i) m(i, j) = a(i, j);
        for (int i = 0; i < b.rows(); ++i) m(a.rows() + i, j) = b(i, j);
    }
    return m;
}

Q max_abs(const MatQ& a) {
    Q best;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            Q x = abs(a(i, j));
            if (x > best) best = x;
        }
    return best;
}

namespace {

// Row operation rows[i] -= f * rows[r] restricted to the support of row r.
void eliminate(MatQ& m, int i, int r, const std::vector<int>& support, const Q& f) {
    Q t;
    for (int j : support) {
        t = f * m(r, j);
        m(i, j) -= t;
    }
}

std::vector<int> row_support(const MatQ& m, int r, int from) {
    std::vector<int> s;
    for (int j = from; j < m.cols(); ++j)
        if (sgn(m(r, j)) != 0) s.push_back(j);
    return s;
}

}  // namespace

Rref rref(MatQ m) {
    Rref out;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int p = -1;
        for (int i = r; i < m.rows(); ++i)
            if (sgn(m(i, c)) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        Q inv = 1 / m(r, c);
        for (int j = c; j < m.cols(); ++j)
            if (sgn(m(r, j)) != 0) m(r, j) *= inv;
        auto support = row_support(m, r, c);
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || sgn(m(i, c)) == 0) continue;
            Q f = m(i, c);
            eliminate(m, i, r, support, f);
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.r = std::move(m);
    return out;
}

int rank(const MatQ& a) {
    MatQ m = a;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int p = -1;
        for (int i = r; i < m.rows(); ++i)
            if (sgn(m(i, c)) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (int j = c; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        auto support = row_support(m, r, c);
        for (int i = r + 1; i < m.rows(); ++i) {
            if (sgn(m(i, c)) == 0) continue;
            Q f = m(i, c) / m(r, c);
            eliminate(m, i, r, support, f);
        }
        ++r;
    }
    return r;
}

MatQ nullspace(const MatQ& m) {
    Rref e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : e.pivots) is_pivot[c] = true;
    int nfree = m.cols() - static_cast<int>(e.pivots.size());
    MatQ n(m.cols(), nfree);
    int k = 0;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        n(f, k) = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i)
            if (sgn(e.r(static_cast<int>(i), f)) != 0) n(e.pivots[i], k) = -e.r(static_cast<int>(i), f);
        ++k;
    }
    return n;
}

MatQ column_basis(const MatQ& m) {
    Rref e = rref(m);
    MatQ b(m.rows(), static_cast<int>(e.pivots.size()));
    for (std::size_t k = 0; k < e.pivots.size(); ++k)
        for (int i = 0; i < m.rows(); ++i) b(i, static_cast<int>(k)) = m(i, e.pivots[k]);
    return b;
}

std::optional<MatQ> solve(const MatQ& a, const MatQ& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("shape mismatch in solve");
    MatQ aug(a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        for (int j = 0; j < b.cols(); ++j) aug(i, a.cols() + j) = b(i, j);
    }
    Rref e = rref(std::move(aug));
    MatQ x(a.cols(), b.cols());
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        int c = e.pivots[i];
        if (c >= a.cols()) return std::nullopt;
        for (int j = 0; j < b.cols(); ++j) x(c, j) = e.r(static_cast<int>(i), a.cols() + j);
    }
    return x;
}

MatQ inverse(const MatQ& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("inverse of non-square matrix");
    if (rank(a) != a.rows()) throw std::domain_error("singular matrix");
    return *solve(a, MatQ::identity(a.rows()));
}

MatQ intersect(const MatQ& u, const MatQ& v) {
    if (u.cols() == 0 || v.cols() == 0) return MatQ(u.rows(), 0);
    MatQ n = nullspace(hstack(u, -v));
    MatQ x(u.cols(), n.cols());
    for (int i = 0; i < u.cols(); ++i)
        for (int j = 0; j < n.cols(); ++j) x(i, j) = n(i, j);
    return column_basis(u * x);
}

bool span_contains(const MatQ& u, const MatQ& v) {
    if (v.cols() == 0) return true;
    return rank(u) == rank(hstack(u, v));
}

bool same_span(const MatQ& u, const MatQ& v) { return span_contains(u, v) && span_contains(v, u); }

MatQI MatQI::real(MatQ r) {
    MatQ z(r.rows(), r.cols());
    return MatQI(std::move(r), std::move(z));
}

MatQI MatQI::imag(MatQ i) {
    MatQ z(i.rows(), i.cols());
    return MatQI(std::move(z), std::move(i));
}

MatQI MatQI::adjoint() const { return MatQI(re.transpose(), -im.transpose()); }
MatQI MatQI::transpose() const { return MatQI(re.transpose(), im.transpose()); }

MatQI operator+(const MatQI& a, const MatQI& b) { return MatQI(a.re + b.re, a.im + b.im); }
MatQI operator-(const MatQI& a, const MatQI& b) { return MatQI(a.re - b.re, a.im - b.im); }

MatQI operator*(const MatQI& a, const MatQI& b) {
    bool ar = !a.re.is_zero(), ai = !a.im.is_zero(), br = !b.re.is_zero(), bi = !b.im.is_zero();
    MatQ re(a.rows(), b.cols()), im(a.rows(), b.cols());
    if (ar && br) re += a.re * b.re;
    if (ai && bi) re -= a.im * b.im;
    if (ar && bi) im += a.re * b.im;
    if (ai && br) im += a.im * b.re;
    return MatQI(std::move(re), std::move(im));
}

MatQI operator*(const QI& s, const MatQI& a) {
    MatQ re = s.re * a.re - s.im * a.im;
    MatQ im = s.re * a.im + s.im * a.re;
    return MatQI(std::move(re), std::move(im));
}

std::vector<QI> operator*(const MatQI& a, const std::vector<QI>& v) {
    if (a.cols() != static_cast<int>(v.size())) throw std::invalid_argument("shape mismatch in M*v");
    std::vector<QI> out(a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            if (v[j].is_zero()) continue;
            QI e = a.at(i, j);
            if (!e.is_zero()) out[i] += e * v[j];
        }
    return out;
}

bool operator==(const MatQI& a, const MatQI& b) { return a.re == b.re && a.im == b.im; }

MatQ real_factor(const MatQI& a) {
    if (a.im.is_zero()) return a.re;
    if (a.re.is_zero()) return a.im;
    throw std::domain_error("matrix is neither purely real nor purely imaginary");
}

int rank(const MatQI& a) {
    if (a.im.is_zero()) return rank(a.re);
    if (a.re.is_zero()) return rank(a.im);
    // rank of the realification [[A,-B],[B,A]] is twice the complex rank
    MatQ top = hstack(a.re, -a.im);
    MatQ bottom = hstack(a.im, a.re);
    return rank(vstack(top, bottom)) / 2;
}

Q max_abs(const MatQI& a) {
    Q x = max_abs(a.re), y = max_abs(a.im);
    return x > y ? x : y;
}

std::string residual_string(const MatQI& a) { return to_string(max_abs(a)); }

}  // namespace g2calc
