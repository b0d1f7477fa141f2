#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <random>
#include <string>

namespace g2calc {

using Q = mpq_class;

std::string to_string(const Q& q);
// Accepts "p", "-p", "p/q"; throws std::invalid_argument otherwise.
Q parse_rational(const std::string& text);

// Gaussian rational re + im*i.
struct QI {
    Q re;
    Q im;

    QI() = default;
    QI(const Q& r) : re(r) {}
    QI(const Q& r, const Q& i) : re(r), im(i) {}
    QI(long r) : re(r) {}

    static QI i() { return QI(Q(0), Q(1)); }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    QI conj() const { return QI(re, -im); }

    QI& operator+=(const QI& o) { re += o.re; im += o.im; return *this; }
    QI& operator-=(const QI& o) { re -= o.re; im -= o.im; return *this; }
    QI& operator*=(const QI& o);
    QI& operator/=(const QI& o);
};

inline QI operator+(QI a, const QI& b) { return a += b; }
inline QI operator-(QI a, const QI& b) { return a -= b; }
inline QI operator*(QI a, const QI& b) { return a *= b; }
inline QI operator/(QI a, const QI& b) { return a /= b; }
inline QI operator-(const QI& a) { return QI(-a.re, -a.im); }
inline bool operator==(const QI& a, const QI& b) { return a.re == b.re && a.im == b.im; }
inline bool operator!=(const QI& a, const QI& b) { return !(a == b); }

std::string to_string(const QI& z);
std::ostream& operator<<(std::ostream& os, const QI& z);

// Seeded source of small exact rationals.
class RationalRng {
public:
    explicit RationalRng(std::uint64_t seed) : gen_(seed) {}

    Q rational(int max_num = 9, int max_den = 5);
    Q nonzero_rational(int max_num = 9, int max_den = 5);
    long integer(long lo, long hi);
    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

}  // namespace g2calc
