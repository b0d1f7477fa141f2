#include "g2calc/g2.hpp"
#include "g2calc/torus.hpp"

#include <doctest.h>

using namespace g2calc;

namespace {

SpectralForm random_spectral(RationalRng& rng, int deg, int terms) {
    SpectralForm s;
    s.degree = deg;
    for (int t = 0; t < terms; ++t) {
        Mode k{};
        for (auto& x : k) x = static_cast<int>(rng.integer(-2, 2));
        CForm a(deg);
        for (int i = 0; i < a.size(); ++i) a[i] = QI(rng.rational(), rng.rational());
        s.terms[k] = a;
    }
    return s;
}

SpectralForm wedge_fixed(const Form& w, const SpectralForm& a) {
    SpectralForm out;
    out.degree = a.degree + w.degree();
    for (const auto& [k, f] : a.terms) out.terms[k] = wedge(complexify(w), f);
    return out;
}

const std::vector<Mode>& sample() {
    static const std::vector<Mode> m = [] {
        RationalRng rng(17);
        return sample_modes(rng, 8, false);
    }();
    return m;
}

}  // namespace

TEST_CASE("mode parsing") {
    Mode k = parse_mode("1,0,-2,0,0,0,3");
    CHECK(k[2] == -2);
    CHECK(mode_string(k) == "1,0,-2,0,0,0,3");
    CHECK(norm2(k) == 14);
    CHECK_THROWS_AS(parse_mode("1,2,3"), std::invalid_argument);
    CHECK(is_zero_mode(Mode{}));
}

TEST_CASE("spectral operators on random sums") {
    RationalRng rng(21);
    const auto& g = standard_g2();
    for (int deg = 0; deg <= 5; ++deg) {
        SpectralForm a = random_spectral(rng, deg, 3);
        CHECK(apply(ModeOp::D, apply(ModeOp::D, a)).is_zero());
        CHECK(apply(ModeOp::LK, apply(ModeOp::LK, a)).is_zero());
        CHECK(apply(ModeOp::LB, apply(ModeOp::LK, a)).is_zero());
        // 𝓛_B = −d*(φ∧·) − φ∧d*
        SpectralForm lb = apply(ModeOp::LB, a);
        SpectralForm rhs = apply(ModeOp::Ds, wedge_fixed(g.phi, a));
        SpectralForm rhs2 = wedge_fixed(g.phi, apply(ModeOp::Ds, a));
        SpectralForm total = lb;
        for (const auto& [k, f] : rhs.terms) total.terms[k] = total.terms[k] + f;
        for (const auto& [k, f] : rhs2.terms) total.terms[k] = total.terms[k] + f;
        CHECK(total.is_zero());
    }
}

TEST_CASE("d components at fixed slots") {
    Mode k = parse_mode("1,2,0,-1,0,0,3");
    CHECK(probe_d_constant({3, 7}, {4, 1}, k).matches(Q(4, 3)));
    CHECK(probe_d_constant({4, 7}, {5, 7}, k).matches(Q(2)));
    CHECK(probe_d_constant({3, 1}, {4, 1}, k).matches(std::nullopt));
    CHECK(probe_d_constant({4, 1}, {5, 14}, k).matches(std::nullopt));
    CHECK(probe_d_constant({2, 14}, {3, 1}, k).matches(std::nullopt));
    CHECK(probe_d_constant({3, 1}, {4, 27}, k).matches(std::nullopt));
    CHECK(probe_d_constant({3, 27}, {4, 1}, k).matches(std::nullopt));
    // Frozen counts: 22 nonzero arrows of d, 16 of 𝓛_B, 10 of 𝓛_K.
    CHECK(component_figure(ComponentOp::D).size() == 22);
    CHECK(component_figure(ComponentOp::LB).size() == 16);
    CHECK(component_figure(ComponentOp::LK).size() == 10);
}

TEST_CASE("component figures on sample modes") {
    Report r = verify_component_figures(sample());
    CHECK(r.passed());
}

TEST_CASE("relations, adjoints and Laplacian per mode") {
    for (const auto& k : sample()) {
        Report r = verify_relations(k);
        CHECK_MESSAGE(r.passed(), mode_string(k));
        int rel = 0;
        for (const auto& c : r.checks) rel += c.id.rfind("rel-", 0) == 0;
        CHECK(rel == 14);
    }
}

TEST_CASE("harmonic one-forms") {
    Report zero = verify_harmonic_one_forms(Mode{});
    CHECK(zero.passed());
    for (const auto& k : sample()) CHECK(verify_harmonic_one_forms(k).passed());
}

TEST_CASE("symbol ranks") {
    RationalRng rng(23);
    for (int n = 0; n < 5; ++n) {
        Vector xi;
        for (auto& x : xi) x = rng.nonzero_rational();
        CHECK(verify_symbol_regularity(xi).passed());
    }
    CHECK(verify_symbol_regularity(basis_vector(4)).passed());
}

TEST_CASE("commutation identities") {
    for (const auto& k : sample()) CHECK_MESSAGE(verify_commutation(k).passed(), mode_string(k));
}

TEST_CASE("complexes per mode") {
    CHECK(verify_complex_figures(Mode{}).passed());
    for (const auto& k : sample()) CHECK_MESSAGE(verify_complex_figures(k).passed(), mode_string(k));
}

TEST_CASE("mode cohomology") {
    ComplexSnapshot zero = mode_cohomology(Mode{});
    const std::int64_t betti[8] = {1, 7, 21, 35, 35, 21, 7, 1};
    for (int j = 0; j <= kDim; ++j) {
        CHECK(zero.deg[j].H_phi == betti[j]);
        CHECK(zero.deg[j].harmonic == betti[j]);
    }
    // Frozen from tests/oracle/derived_values.py.
    const std::int64_t phi[8] = {0, 0, 0, 14, 14, 0, 0, 0};
    const std::int64_t psi[8] = {0, 0, 9, 27, 27, 9, 0, 0};
    for (const char* text : {"1,0,0,0,0,0,0", "1,2,0,0,0,0,-1", "3,-1,2,0,1,0,-2"}) {
        ComplexSnapshot s = mode_cohomology(parse_mode(text));
        for (int j = 0; j <= kDim; ++j) {
            CHECK(s.deg[j].H_phi == phi[j]);
            CHECK(s.deg[j].H_psi == psi[j]);
            CHECK(s.deg[j].harmonic == 0);
        }
        CHECK(s.deg[3].d_on_H_phi == 14);
    }
}

TEST_CASE("phi symmetries") {
    const auto& g = phi_symmetries();
    CHECK(g.size() == 1344);  // frozen oracle value
    Mode k = parse_mode("1,2,0,0,0,0,-1");
    for (std::size_t i = 0; i < g.size(); i += 97) CHECK(mode_cohomology(g[i].act(k)) == mode_cohomology(k));
}

TEST_CASE("truncated cohomology") {
    TruncatedCohomology t = truncated_cohomology(2, 1);
    REQUIRE(t.levels.size() == 2);
    CHECK(t.uniform);
    // Frozen oracle values: 35 + 14·1093 and 35 + 14·39062.
    CHECK(t.levels[0].modes == 1094);
    CHECK(t.levels[0].dims.deg[3].H_phi == 15337);
    CHECK(t.levels[1].dims.deg[3].H_phi == 546903);
    CHECK(t.levels[0].dims.deg[2].H_psi == 9858);
    CHECK(t.levels[1].dims.deg[3].H_psi == 1054709);
    for (int j : {0, 1, 2, 5, 6, 7}) CHECK(t.levels[1].dims.deg[j].H_phi == t.levels[1].dims.deg[j].harmonic);
    CHECK_THROWS_AS(truncated_cohomology(0), std::invalid_argument);
}
