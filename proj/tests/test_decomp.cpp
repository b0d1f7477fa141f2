#include "g2calc/decomp.hpp"
#include "g2calc/derivations.hpp"
#include "g2calc/g2.hpp"

#include <doctest.h>

using namespace g2calc;

namespace {

Vector random_vector(RationalRng& rng) {
    Vector v;
    for (auto& x : v) x = rng.rational();
    return v;
}

}  // namespace

TEST_CASE("projectors") {
    const auto& g = standard_g2();
    CHECK(project({3, 1}, g.phi) == g.phi);
    CHECK(project({3, 7}, g.phi).is_zero());
    CHECK(project({3, 27}, g.phi).is_zero());
    RationalRng rng(2);
    for (int n = 0; n < 5; ++n) CHECK(project({2, 14}, interior(random_vector(rng), g.phi)).is_zero());
    for (TypeLabel t : all_labels()) CHECK(rank(Decomposition::instance().projector(t)) == t.l);
    CHECK(verify_projectors().passed());
}

TEST_CASE("ell maps") {
    const auto& g = standard_g2();
    MatQ id = MatQ::identity(kDim);
    CHECK(ell_phi(id) == Q(3) * g.phi);
    CHECK(ell_psi(id) == Q(4) * g.psi);
    for (const auto& beta : omega2_14_basis()) CHECK(ell_phi(two_form_matrix(beta)).is_zero());
    for (const auto& h : traceless_symmetric_basis()) CHECK(hodge_star(ell_phi(h)) == -ell_psi(h));
    RationalRng rng(4);
    CHECK(verify_ell_maps(rng, 10).passed());
}

TEST_CASE("identifications") {
    const auto& g = standard_g2();
    RationalRng rng(6);
    for (int n = 0; n < 5; ++n) {
        Vector x = random_vector(rng);
        CHECK(identify({1, 7}, {2, 7}, flat(x)) == interior(x, g.phi));
        Form xpsi = interior(x, g.psi);
        CHECK(identify({3, 7}, {4, 7}, xpsi) == hodge_star(xpsi));
        Form a = interior(x, g.phi);
        CHECK(identify({3, 7}, {2, 7}, identify({2, 7}, {3, 7}, a)) == a);
    }
    CHECK_THROWS(identify({2, 7}, {3, 7}, g.phi));
}

TEST_CASE("symmetric frame sums") {
    RationalRng rng(8);
    Report r = verify_symmetric_sums(rng, 20);
    CHECK(r.passed());
}

TEST_CASE("derivations on special forms") {
    const auto& g = standard_g2();
    const auto& b = cross_product_B();
    const auto& k = associator_K();
    CHECK(iota(b, scalar_form(5)).is_zero());
    CHECK(iota(b, g.phi) == Q(-6) * g.psi);
    CHECK(iota(b, g.psi).is_zero());
    CHECK(iota(k, g.phi).is_zero());
    CHECK(iota(k, g.psi).is_zero());
    RationalRng rng(9);
    Vector x = random_vector(rng);
    CHECK(iota(b, flat(x)) == interior(x, g.phi));
    CHECK(iota(k, flat(x)) == -interior(x, g.psi));
    CHECK(verify_derivation_identities(rng, 10).passed());
}

TEST_CASE("derivation arrow constants") {
    ProbeResult p = probe_constant(Derivation::IotaB, {3, 1}, {4, 1});
    CHECK(p.matches(Q(-6)));
    CHECK(probe_constant(Derivation::IotaK, {3, 7}, {5, 7}).matches(Q(-4)));
    for (TypeLabel to : labels_in_degree(3)) CHECK(probe_constant(Derivation::IotaB, {2, 14}, to).matches(std::nullopt));
    CHECK_THROWS_AS(probe_constant(Derivation::IotaB, {3, 1}, {5, 7}), std::invalid_argument);
    CHECK(verify_iota_figures().passed());
    CHECK(iota_figure(Derivation::IotaB).size() == 7);
    CHECK(iota_figure(Derivation::IotaK).size() == 4);
}

TEST_CASE("labels") {
    CHECK(parse_label("3_27") == TypeLabel{3, 27});
    CHECK(parse_label("2,14").l == 14);
    CHECK_FALSE(valid_label({3, 14}));
    CHECK(labels_in_degree(3).size() == 3);
}
