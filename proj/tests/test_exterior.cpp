#include "g2calc/g2.hpp"

#include <doctest.h>

using namespace g2calc;

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

}  // namespace

TEST_CASE("rationals parse and print exactly") {
    CHECK(parse_rational("-3/6") == Q(-1, 2));
    CHECK(to_string(Q(7, 3)) == "7/3");
    CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
    CHECK(to_string(QI(Q(1), Q(-2))) != "");
}

TEST_CASE("linear algebra over Q") {
    MatQ a(2, 3);
    a(0, 0) = 1, a(0, 1) = 2, a(0, 2) = 3;
    a(1, 0) = 2, a(1, 1) = 4, a(1, 2) = 6;
    CHECK(rank(a) == 1);
    MatQ n = nullspace(a);
    CHECK(n.cols() == 2);
    CHECK((a * n).is_zero());
    CHECK(column_basis(a).cols() == 1);
    auto x = solve(a, MatQ::column({Q(1), Q(2)}));
    REQUIRE(x);
    CHECK(a * *x == MatQ::column({Q(1), Q(2)}));
    CHECK_FALSE(solve(a, MatQ::column({Q(1), Q(0)})));
    CHECK(same_span(n, hstack(n.transpose().transpose(), MatQ(3, 0))));
    MatQ empty(0, 0);
    CHECK(rank(empty) == 0);
    CHECK(hstack(MatQ(3, 0), n) == n);
}

TEST_CASE("wedge, interior and star on basis elements") {
    CHECK(wedge(monomial({1}), monomial({2})) == monomial({1, 2}));
    CHECK(wedge(monomial({1, 2}), monomial({1, 2})).is_zero());
    CHECK(wedge(monomial({2}), monomial({1})) == monomial({1, 2}, -1));
    CHECK(interior(basis_vector(1), monomial({1, 2})) == monomial({2}));
    CHECK(hodge_star(scalar_form(1)) == volume_form());
    CHECK(basis(3).size() == 35);
    CHECK(binomial(7, 4) == 35);
}

TEST_CASE("exterior identities on random forms") {
    RationalRng rng(11);
    for (int deg = 0; deg <= kDim; ++deg) {
        Form a = random_form(rng, deg);
        CHECK(hodge_star(hodge_star(a)) == a);
        Vector x = random_vector(rng);
        CHECK(interior(x, interior(x, a)).is_zero());
        Form b = random_form(rng, kDim - deg);
        int sign = (deg * (kDim - deg)) % 2 ? -1 : 1;
        CHECK(wedge(a, b) == Q(sign) * wedge(b, a));
        Form c = random_form(rng, deg);
        CHECK(wedge(a, hodge_star(c)) == inner(a, c) * volume_form());
    }
}

TEST_CASE("the standard G2 structure") {
    const auto& g = standard_g2();
    CHECK(hodge_star(g.phi) == g.psi);
    CHECK(hodge_star(g.psi) == g.phi);
    CHECK(wedge(g.phi, g.psi) == Q(7) * volume_form());
    // Frozen from tests/oracle/derived_values.py: e1 ⌟ φ = e^23 + e^45 − e^67.
    CHECK(interior(basis_vector(1), g.phi) == monomial({2, 3}) + monomial({4, 5}) - monomial({6, 7}));
    Form e1 = interior(basis_vector(1), g.phi);
    int nonzero = 0;
    for (const auto& c : e1.coefficients()) nonzero += sgn(c) != 0;
    CHECK(nonzero == 3);
    CHECK(wedge(wedge(e1, e1), g.phi) == Q(-6) * volume_form());
}

TEST_CASE("cross product") {
    // Frozen oracle value: e1 × e2 = e3.
    CHECK(cross(basis_vector(1), basis_vector(2)) == basis_vector(3));
    RationalRng rng(5);
    for (int n = 0; n < 10; ++n) {
        Vector x = random_vector(rng), y = random_vector(rng);
        for (Q c : cross(x, x)) CHECK(sgn(c) == 0);
        Vector lhs = cross(x, cross(x, y));
        for (int i = 0; i < kDim; ++i) CHECK(lhs[i] == -dot(x, x) * y[i] + dot(x, y) * x[i]);
    }
}

TEST_CASE("contraction identities") {
    Report r = verify_contractions();
    CHECK(r.checks.size() == 10);
    CHECK(r.passed());
}

TEST_CASE("fundamental equation, wedge identities, cross product and frame sums") {
    RationalRng rng(3);
    Report f = verify_fundamental(rng, 100);
    CHECK(f.passed());
    Report w = verify_wedge_identities(rng, 20);
    CHECK(w.checks.size() == 8);
    CHECK(w.passed());
    CHECK(verify_cross_product(rng, 20).passed());
    Report s = verify_frame_sums();
    CHECK(s.checks.size() == 4);
    CHECK(s.passed());
}

TEST_CASE("a wrong candidate form fails the contraction identities") {
    Form bad = standard_g2().phi + monomial({1, 2, 4});
    CHECK_FALSE(verify_contractions(make_g2(bad)).passed());
}
