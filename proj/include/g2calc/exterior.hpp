#pragma once

#include "g2calc/linalg.hpp"
#include "g2calc/rational.hpp"

#include <array>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace g2calc {

constexpr int kDim = 7;

int binomial(int n, int k);

// Strictly increasing index set in 1..7, stored as a bitmask (bit i-1 <-> index i).
struct MultiIndex {
    std::uint8_t mask = 0;

    int degree() const { return __builtin_popcount(mask); }
    bool contains(int i) const { return (mask >> (i - 1)) & 1u; }
    std::vector<int> indices() const;
    std::string str() const;  // e.g. "e^{135}"

    friend bool operator==(MultiIndex a, MultiIndex b) { return a.mask == b.mask; }
};

// Degree-k basis monomials in lexicographic order.
const std::vector<MultiIndex>& basis(int k);
int basis_index(MultiIndex m);

// Sign of e^a ∧ e^b relative to e^{a∪b}; 0 if they share an index.
int wedge_sign(std::uint8_t a, std::uint8_t b);
// e_p ⌟ e^I = sign * e^{I \ p}; 0 if p ∉ I.
int interior_sign(int p, std::uint8_t mask);
// ∗e^I = sign * e^{I^c}.
int star_sign(std::uint8_t mask);

using Vector = std::array<Q, kDim>;

Vector basis_vector(int i);  // e_i, i in 1..7
Q dot(const Vector& x, const Vector& y);

template <class S>
class BasicForm {
public:
    BasicForm() : BasicForm(0) {}
    // Degrees outside 0..7 are allowed and carry the (unique) zero form.
    explicit BasicForm(int degree) : deg_(degree) { c_.resize(binomial(kDim, degree)); }

    int degree() const { return deg_; }
    int size() const { return static_cast<int>(c_.size()); }

    S& operator[](int i) { return c_[i]; }
    const S& operator[](int i) const { return c_[i]; }
    S& at(MultiIndex m) { check(m); return c_[basis_index(m)]; }
    const S& at(MultiIndex m) const { check(m); return c_[basis_index(m)]; }

    const std::vector<S>& coefficients() const { return c_; }
    std::vector<S>& coefficients() { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (!(x == S(0))) return false;
        return true;
    }

    BasicForm& operator+=(const BasicForm& o) {
        same_degree(o);
        for (int i = 0; i < size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    BasicForm& operator-=(const BasicForm& o) {
        same_degree(o);
        for (int i = 0; i < size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    BasicForm& operator*=(const S& s) {
        for (auto& x : c_) x *= s;
        return *this;
    }

    friend BasicForm operator+(BasicForm a, const BasicForm& b) { return a += b; }
    friend BasicForm operator-(BasicForm a, const BasicForm& b) { return a -= b; }
    friend BasicForm operator-(BasicForm a) { return a *= S(-1); }
    friend BasicForm operator*(const S& s, BasicForm a) { return a *= s; }
    friend bool operator==(const BasicForm& a, const BasicForm& b) { return a.deg_ == b.deg_ && a.c_ == b.c_; }
    friend bool operator!=(const BasicForm& a, const BasicForm& b) { return !(a == b); }

private:
    void check(MultiIndex m) const {
        if (m.degree() != deg_) throw std::invalid_argument("multi-index degree does not match form");
    }
    void same_degree(const BasicForm& o) const {
        if (o.deg_ != deg_) throw std::invalid_argument("degree mismatch");
    }

    int deg_;
    std::vector<S> c_;
};

using Form = BasicForm<Q>;
using CForm = BasicForm<QI>;

// c * e^{i1} ∧ ... ∧ e^{ik}; indices need not be sorted (the sign is applied).
Form monomial(std::initializer_list<int> idx, const Q& c = 1);
Form scalar_form(const Q& c);
Form flat(const Vector& x);
Vector sharp(const Form& one_form);
Form volume_form();

template <class S>
BasicForm<S> wedge(const BasicForm<S>& a, const BasicForm<S>& b) {
    BasicForm<S> out(a.degree() + b.degree());
    if (out.size() == 0) return out;
    const auto& ba = basis(a.degree());
    const auto& bb = basis(b.degree());
    for (int i = 0; i < a.size(); ++i) {
        if (a[i] == S(0)) continue;
        for (int j = 0; j < b.size(); ++j) {
            if (b[j] == S(0)) continue;
            int s = wedge_sign(ba[i].mask, bb[j].mask);
            if (s == 0) continue;
            S t = a[i] * b[j];
            int idx = basis_index(MultiIndex{static_cast<std::uint8_t>(ba[i].mask | bb[j].mask)});
            if (s > 0) out[idx] += t; else out[idx] -= t;
        }
    }
    return out;
}

template <class S>
BasicForm<S> interior(const Vector& x, const BasicForm<S>& a) {
    BasicForm<S> out(a.degree() - 1);
    if (out.size() == 0) return out;
    const auto& ba = basis(a.degree());
    for (int i = 0; i < a.size(); ++i) {
        if (a[i] == S(0)) continue;
        for (int p = 1; p <= kDim; ++p) {
            if (sgn(x[p - 1]) == 0 || !ba[i].contains(p)) continue;
            int s = interior_sign(p, ba[i].mask);
            int idx = basis_index(MultiIndex{static_cast<std::uint8_t>(ba[i].mask & ~(1u << (p - 1)))});
            S t = a[i] * S(x[p - 1]);
            if (s > 0) out[idx] += t; else out[idx] -= t;
        }
    }
    return out;
}

template <class S>
BasicForm<S> hodge_star(const BasicForm<S>& a) {
    BasicForm<S> out(kDim - a.degree());
    const auto& ba = basis(a.degree());
    for (int i = 0; i < a.size(); ++i) {
        if (a[i] == S(0)) continue;
        std::uint8_t c = static_cast<std::uint8_t>(~ba[i].mask & 0x7f);
        int idx = basis_index(MultiIndex{c});
        if (star_sign(ba[i].mask) > 0) out[idx] += a[i]; else out[idx] -= a[i];
    }
    return out;
}

// Metric inner product ⟨a,b⟩ (a∧∗b = ⟨a,b⟩ vol).
Q inner(const Form& a, const Form& b);
// Hermitian product Σ a_I conj(b_I).
QI inner(const CForm& a, const CForm& b);

CForm complexify(const Form& a);

// Matrices on coefficient vectors (columns indexed by the degree-k basis).
MatQ wedge_matrix(const Form& w, int k);        // a ↦ w ∧ a
MatQ interior_matrix(const Vector& x, int k);   // a ↦ x ⌟ a
MatQ star_matrix(int k);                        // a ↦ ∗a
Form form_from(int degree, const std::vector<Q>& coeffs);

std::string to_string(const Form& a);

}  // namespace g2calc
