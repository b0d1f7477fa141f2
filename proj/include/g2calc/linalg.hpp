#pragma once

#include "g2calc/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace g2calc {

// Dense row-major rational matrix.
class MatQ {
public:
    MatQ() = default;
    MatQ(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

    static MatQ identity(int n);
    static MatQ column(const std::vector<Q>& v);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Q& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Q& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    std::vector<Q> col(int j) const;
    void set_col(int j, const std::vector<Q>& v);

    bool is_zero() const;
    MatQ transpose() const;

    MatQ& operator+=(const MatQ& o);
    MatQ& operator-=(const MatQ& o);
    MatQ& operator*=(const Q& s);

    friend bool operator==(const MatQ& x, const MatQ& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Q> a_;
};

MatQ operator+(MatQ a, const MatQ& b);
MatQ operator-(MatQ a, const MatQ& b);
MatQ operator-(MatQ a);
MatQ operator*(const MatQ& a, const MatQ& b);
MatQ operator*(const Q& s, MatQ a);
std::vector<Q> operator*(const MatQ& a, const std::vector<Q>& v);

MatQ hstack(const MatQ& a, const MatQ& b);
MatQ vstack(const MatQ& a, const MatQ& b);

// Largest absolute entry; 0 for an empty matrix.
Q max_abs(const MatQ& a);

struct Rref {
    MatQ r;
    std::vector<int> pivots;
};

Rref rref(MatQ m);
int rank(const MatQ& m);
// Columns form a basis of the kernel.
MatQ nullspace(const MatQ& m);
// Columns form a basis of the column space (a subset of the input columns).
MatQ column_basis(const MatQ& m);
// Some X with A X = B, or nullopt.
std::optional<MatQ> solve(const MatQ& a, const MatQ& b);
MatQ inverse(const MatQ& a);
// Basis of col(U) ∩ col(V).
MatQ intersect(const MatQ& u, const MatQ& v);
bool same_span(const MatQ& u, const MatQ& v);
bool span_contains(const MatQ& u, const MatQ& v);

// Gaussian-rational matrix stored as re + i*im.
class MatQI {
public:
    MatQI() = default;
    MatQI(int rows, int cols) : re(rows, cols), im(rows, cols) {}
    MatQI(MatQ r, MatQ i) : re(std::move(r)), im(std::move(i)) {}
    static MatQI real(MatQ r);
    static MatQI imag(MatQ i);

    int rows() const { return re.rows(); }
    int cols() const { return re.cols(); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    QI at(int i, int j) const { return QI(re(i, j), im(i, j)); }
    void set(int i, int j, const QI& z) { re(i, j) = z.re; im(i, j) = z.im; }

    MatQI adjoint() const;  // conjugate transpose
    MatQI transpose() const;

    MatQ re;
    MatQ im;
};

MatQI operator+(const MatQI& a, const MatQI& b);
MatQI operator-(const MatQI& a, const MatQI& b);
MatQI operator*(const MatQI& a, const MatQI& b);
MatQI operator*(const QI& s, const MatQI& a);
std::vector<QI> operator*(const MatQI& a, const std::vector<QI>& v);
bool operator==(const MatQI& a, const MatQI& b);

// For a matrix that is purely real or purely imaginary, the real R with
// a = R or a = i*R; kernels and spans over Q(i) are those of R.
// Throws std::domain_error for mixed matrices.
MatQ real_factor(const MatQI& a);
// Rank over Q(i).
int rank(const MatQI& a);
Q max_abs(const MatQI& a);
std::string residual_string(const MatQI& a);

}  // namespace g2calc
