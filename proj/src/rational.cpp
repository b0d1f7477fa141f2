#include "g2calc/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace g2calc {

std::string to_string(const Q& q) { return q.get_str(); }

namespace {

bool is_integer_literal(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Q parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+')
        throw std::invalid_argument("malformed rational literal '" + text + "'");
    if (num[0] == '+') num.erase(0, 1);
    mpz_class n(num), d(den);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    Q q(n, d);
    q.canonicalize();
    return q;
}

QI& QI::operator*=(const QI& o) {
    Q r = re * o.re - im * o.im;
    Q i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

QI& QI::operator/=(const QI& o) {
    Q n = o.re * o.re + o.im * o.im;
    if (sgn(n) == 0) throw std::domain_error("division by zero");
    *this *= o.conj();
    re /= n;
    im /= n;
    return *this;
}

std::string to_string(const QI& z) {
    if (sgn(z.im) == 0) return to_string(z.re);
    if (sgn(z.re) == 0) return to_string(z.im) + "i";
    std::string s = to_string(z.re);
    if (sgn(z.im) > 0) s += "+";
    return s + to_string(z.im) + "i";
}

std::ostream& operator<<(std::ostream& os, const QI& z) { return os << to_string(z); }

long RationalRng::integer(long lo, long hi) {
    std::uniform_int_distribution<long> dist(lo, hi);
    return dist(gen_);
}

Q RationalRng::rational(int max_num, int max_den) {
    Q q(integer(-max_num, max_num), integer(1, max_den));
    q.canonicalize();
    return q;
}

Q RationalRng::nonzero_rational(int max_num, int max_den) {
    for (;;) {
        Q q = rational(max_num, max_den);
        if (sgn(q) != 0) return q;
    }
}

}  // namespace g2calc
