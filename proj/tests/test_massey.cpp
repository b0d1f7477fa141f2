#include "g2calc/massey_io.hpp"

#include <doctest.h>

using namespace g2calc;

namespace {

LieAlgebra random_nilpotent(RationalRng& rng) {
    // [x1, x_j] = c_j x_{j+1}.
    LieAlgebra g = LieAlgebra::abelian({"x1", "x2", "x3", "x4", "x5"});
    g.set_bracket(0, 1, {0, 0, rng.nonzero_rational(), 0, 0});
    g.set_bracket(0, 2, {0, 0, 0, rng.nonzero_rational(), 0});
    g.set_bracket(0, 3, {0, 0, 0, 0, rng.nonzero_rational()});
    return g;
}

}  // namespace

TEST_CASE("Chevalley-Eilenberg complex of the Heisenberg algebra") {
    DGA a = ce_complex(LieAlgebra::heisenberg());
    CHECK(verify_dga(a).passed());
    CHECK(a.differential(a.parse("e3")) == a.parse("-e1^e2"));
    CHECK(a.differential(a.parse("e1")).is_zero());
    CohomologyBasis h = cohomology(a);
    CHECK(h.betti() == std::vector<int>{1, 2, 2, 1});  // frozen oracle value
    CHECK(h.is_exact(a.parse("e1^e2")));
    CHECK_FALSE(h.is_exact(a.parse("e2^e3")));
}

TEST_CASE("random nilpotent algebras give valid dgas") {
    RationalRng rng(31);
    for (int n = 0; n < 5; ++n) {
        LieAlgebra g = random_nilpotent(rng);
        REQUIRE(sgn(g.jacobi_residual()) == 0);
        DGA a = ce_complex(g);
        Report r = verify_dga(a);
        CHECK(r.passed());
        auto b = cohomology(a).betti();
        int euler = 0;
        for (std::size_t p = 0; p < b.size(); ++p) euler += (p % 2 ? -1 : 1) * b[p];
        CHECK(euler == 0);
    }
}

TEST_CASE("Jacobi failure is rejected") {
    LieAlgebra g = LieAlgebra::abelian({"x", "y", "z"});
    g.set_bracket(0, 1, {0, 0, 1});
    g.set_bracket(1, 2, {1, 0, 0});
    g.set_bracket(0, 2, {0, 0, 1});
    CHECK(sgn(g.jacobi_residual()) != 0);
    CHECK_THROWS_AS(ce_complex(g), std::invalid_argument);
}

TEST_CASE("expression parser") {
    DGA a = ce_complex(LieAlgebra::heisenberg());
    CHECK(a.parse("2*e1^e2 - 1/2 e1^e3").c == a.parse("-1/2*e1^e3 + 2e1^e2").c);
    CHECK(a.parse("e2^e1") == a.parse("-e1^e2"));
    CHECK(a.format(a.parse("3/2 e1^e3 - e2^e3")) == "3/2 e1^e3 - e2^e3");
    CHECK(a.parse("1") == a.unit());
    CHECK_THROWS(a.parse("e4"));
    CHECK_THROWS(a.parse("e1 + e1^e2"));
}

TEST_CASE("Iwasawa triple product") {
    DGA a = ce_complex(LieAlgebra::heisenberg());
    CohomologyBasis h = cohomology(a);
    MasseyResult m = massey_triple(a, h, a.parse("e1"), a.parse("e2"), a.parse("e2"));
    // Frozen oracle values: f = −e3, g = 0, representative e2∧e3.
    CHECK(m.f == a.parse("-e3"));
    CHECK(m.g.is_zero());
    CHECK(m.representative == a.parse("e2^e3"));
    CHECK(m.indeterminacy.cols() == 0);
    CHECK_FALSE(m.vanishes);

    RationalRng rng(1);
    MasseyStability s = massey_stability(a, h, a.parse("e1"), a.parse("e2"), a.parse("e2"), rng, 20);
    CHECK(s.trials == 20);
    CHECK(s.flips == 0);
    CHECK(s.class_moves == 0);

    MasseyResult doubled = massey_triple(a, h, a.parse("2 e1"), a.parse("e2"), a.parse("e2"));
    CHECK(in_indeterminacy(a, h, doubled, doubled.representative - Q(2) * m.representative));
    MasseyResult scaled = massey_triple(a, h, a.parse("-3 e1"), a.parse("1/2 e2"), a.parse("7 e2"));
    CHECK_FALSE(scaled.vanishes);
}

TEST_CASE("sign convention does not change the verdict") {
    LieAlgebra g = LieAlgebra::heisenberg();
    for (auto& c : g.c) c = -c;
    DGA a = ce_complex(g);
    CohomologyBasis h = cohomology(a);
    CHECK(a.differential(a.parse("e3")) == a.parse("e1^e2"));
    CHECK_FALSE(massey_triple(a, h, a.parse("e1"), a.parse("e2"), a.parse("e2")).vanishes);
}

TEST_CASE("undefined products report the offending class") {
    DGA a = ce_complex(LieAlgebra::heisenberg());
    CohomologyBasis h = cohomology(a);
    CHECK_THROWS_AS(massey_triple(a, h, a.parse("e1"), a.parse("e3"), a.parse("e2")), MasseyUndefined);
    DGA t = ce_complex(LieAlgebra::abelian({"e1", "e2", "e3"}));
    CohomologyBasis ht = cohomology(t);
    try {
        massey_triple(t, ht, t.parse("e1"), t.parse("e2"), t.parse("e3"));
        FAIL("expected MasseyUndefined");
    } catch (const MasseyUndefined& e) {
        CHECK(std::string(e.what()).find("[a][b]") != std::string::npos);
    }
}

TEST_CASE("abelian model: every defined triple vanishes") {
    DGA t = ce_complex(LieAlgebra::abelian({"e1", "e2", "e3", "e4"}));
    CohomologyBasis h = cohomology(t);
    CHECK(h.betti() == std::vector<int>{1, 4, 6, 4, 1});
    for (int p = 1; p <= 2; ++p)
        for (int q = 1; q <= 2; ++q)
            for (auto& m : massey_sweep(t, h, p, q, 1)) CHECK(m.vanishes);
    MasseyResult m = massey_triple(t, h, t.parse("e1"), t.parse("e1"), t.parse("e1"));
    CHECK(m.vanishes);
    CHECK_THROWS_AS(massey_triple(t, h, t.parse("e1"), t.parse("e1"), t.parse("e2")), MasseyUndefined);
}

TEST_CASE("tensor products and naturality") {
    DGA w = ce_complex(LieAlgebra::heisenberg());
    DGA t = ce_complex(LieAlgebra::abelian({"f1", "f2"}));
    DGA m = tensor_product(w, t);
    CHECK(verify_dga(m).passed());
    CohomologyBasis hw = cohomology(w), hm = cohomology(m);
    CHECK(hm.betti() == kunneth_betti(hw.betti(), cohomology(t).betti()));
    DgaMorphism inc = include_left(w, t), proj = project_left(w, t);
    CHECK(verify_morphism(inc, w, m).passed());
    CHECK(verify_morphism(proj, m, w).passed());
    Cochain a = w.parse("e1"), b = w.parse("e2");
    MasseyResult mw = massey_triple(w, hw, a, b, b);
    MasseyResult mm = massey_triple(m, hm, inc.apply(a), inc.apply(b), inc.apply(b));
    CHECK_FALSE(mm.vanishes);
    CHECK(in_indeterminacy(m, hm, mm, mm.representative - inc.apply(mw.representative)));
    CHECK(m.parse("e1^f1") == m.multiply(m.parse("e1"), m.parse("f1")));
    CHECK(m.parse("f1^e1") == m.parse("-e1^f1"));
    CHECK_THROWS(tensor_product(w, w));
}

TEST_CASE("vanishing filter") {
    CHECK(almost_formal_vanishing(1, 1, 1, 4).guaranteed);
    CHECK_FALSE(almost_formal_vanishing(2, 2, 2, 4).guaranteed);
    CHECK_FALSE(almost_formal_vanishing(1, 3, 1, 4).guaranteed);
    CHECK(almost_formal_vanishing(2, 2, 3, 4, true).guaranteed);
    CHECK(almost_formal_vanishing(4, 2, 2, 4, true).guaranteed);
    CHECK(almost_formal_vanishing(3, 3, 3, 4, true).guaranteed);
    CHECK_FALSE(almost_formal_vanishing(2, 2, 2, 4, true).guaranteed);
    int open = 0;
    for (int p = 0; p <= 7; ++p)
        for (int q = 0; q <= 7; ++q)
            for (int r = 0; r <= 7; ++r) open += !almost_formal_vanishing(p, q, r, 4, true).guaranteed;
    CHECK(open == 1);
}

TEST_CASE("Betti arithmetic") {
    CHECK(kunneth_betti({1, 2, 2, 1}, {1, 1, 22, 1, 1}) == std::vector<int>{1, 3, 26, 48, 48, 26, 3, 1});
    CHECK(kunneth_betti({1, 3, 3, 1}, {1, 4, 6, 4, 1}) == std::vector<int>{1, 7, 21, 35, 35, 21, 7, 1});
    std::vector<int> l = connected_sum_betti({1, 0, 22, 0, 1}, {1, 1, 0, 1, 1});
    CHECK(l == std::vector<int>{1, 1, 22, 1, 1});
    for (int b1l = 0; b1l < 4; ++b1l) CHECK(kunneth_betti({1, 2, 2, 1}, {1, b1l, 0, b1l, 1})[1] == 2 + b1l);
    CHECK_THROWS(connected_sum_betti({1, 0, 1}, {1, 0, 0, 1}));
}

TEST_CASE("intersection forms") {
    CHECK(inertia(e8_form()).signature() == 8);
    CHECK(is_even_form(e8_form()));
    CHECK(inertia(hyperbolic_form()).signature() == 0);
    CHECK(inertia(hyperbolic_form()).positive == 1);
    MatQ k3 = form_from_blocks({"-E8", "-E8", "H", "H", "H"});
    CHECK(k3.rows() == 22);
    CHECK(inertia(k3).signature() == -16);  // frozen oracle value
    CHECK(is_even_form(k3));
    CHECK_FALSE(is_even_form(form_from_blocks({"<1>", "<-1>"})));
    CHECK(inertia(form_from_blocks({"<1>", "<-1>", "<0>"})).zero == 1);
    CHECK_THROWS(form_from_blocks({"E7"}));
}

TEST_CASE("four-manifold models") {
    std::vector<FourManifoldPart> parts{{"K3", {1, 0, 22, 0, 1}, form_from_blocks({"-E8", "-E8", "H", "H", "H"})},
                                        {"S", {1, 1, 0, 1, 1}, MatQ(0, 0)}};
    DGA l = four_manifold_model(parts);
    CHECK(verify_dga(l).passed());
    CHECK(cohomology(l).betti() == std::vector<int>{1, 1, 22, 1, 1});
    CHECK(l.multiply(l.parse("S.a1"), l.parse("S.b1")) == l.parse("vol"));
    CHECK_THROWS(four_manifold_model({{"bad", {1, 1, 0, 2, 1}, MatQ(0, 0)}}));
}

TEST_CASE("model files") {
    ModelFile m = parse_model_text("name w\ngenerators e1 e2 e3  # basis\nbracket e1 e2 = e3\nmassey e1 ; e2 ; e2\n");
    CHECK(m.algebra.name == "w");
    CHECK(m.algebra.at(2, 0, 1) == 1);
    CHECK(m.algebra.at(2, 1, 0) == -1);
    CHECK(m.massey.size() == 1);
    ModelFile d = parse_model_text("generators e1 e2 e3\ndifferential e3 = -e1^e2\n");
    CHECK(d.algebra.c == m.algebra.c);
    CHECK_THROWS_AS(parse_model_text("generators e1 e2\nbracket e1 e3 = e2\n"), ParseError);
    CHECK_THROWS_AS(parse_model_text("bracket e1 e2 = e3\n"), ParseError);
    CHECK_THROWS_AS(parse_model_text("generators a b\nfoo\n"), ParseError);
    CHECK_THROWS_AS(parse_model_text("generators a b c\npart X betti 1 0 2 0 1 form H H\n"), ParseError);
    try {
        parse_model_text("generators a\n\nwhat\n", "f.txt");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).rfind("f.txt:3:", 0) == 0);
    }
    CHECK(parse_classes(" e1 ;e2; 2 e1^e2 ")[2] == "2 e1^e2");
    CHECK_THROWS(parse_classes("e1;e2"));
    for (const auto& name : example_names()) CHECK_NOTHROW(parse_model_text(example_text(name)));
}

TEST_CASE("obstruction check on the built-in inputs") {
    ObstructionReport k3 = obstruction_check(parse_model_text(example_text("k3-connect-sum")).obstruction_input());
    CHECK(k3.betti_M[1] == 3);
    CHECK(k3.betti_M[2] == 26);
    CHECK(k3.betti_M[3] == 48);
    CHECK(k3.signature_L == -16);
    CHECK(k3.even_L);
    for (const auto& c : k3.classical) CHECK_MESSAGE(c.pass, c.id);
    REQUIRE(k3.massey.size() == 1);
    CHECK(k3.massey[0].defined);
    CHECK_FALSE(k3.massey[0].vanishes_on_M);
    CHECK(k3.massey[0].naturality);
    CHECK(k3.massey[0].obstructs);
    CHECK(k3.verdict == "NO");

    ObstructionReport t7 = obstruction_check(parse_model_text(example_text("t7")).obstruction_input());
    CHECK(t7.betti_M == std::vector<int>{1, 7, 21, 35, 35, 21, 7, 1});
    CHECK(t7.verdict == "COMPATIBLE");

    ModelFile b5 = parse_model_text(
        "generators e1 e2 e3\nbracket e1 e2 = e3\n"
        "part A betti 1 1 0 1 1 form none\npart B betti 1 1 0 1 1 form none\npart C betti 1 1 0 1 1 form none\n");
    ObstructionReport r5 = obstruction_check(b5.obstruction_input());
    CHECK(r5.betti_M[1] == 5);
    bool b1_failed = false;
    for (const auto& c : r5.classical)
        if (c.id == "b1-in-0137") b1_failed = !c.pass;
    CHECK(b1_failed);
    CHECK(r5.verdict == "NO");
}
