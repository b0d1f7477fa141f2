// One PASS/FAIL line per acceptance criterion; exits nonzero on any failure.

#include "g2calc/commands.hpp"
#include "g2calc/decomp.hpp"
#include "g2calc/derivations.hpp"
#include "g2calc/g2.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace g2calc;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

// Counts checks whose id satisfies `keep`; reports the first failure.
Outcome summarize(const Report& r, const std::function<bool(const std::string&)>& keep = nullptr) {
    std::size_t n = 0, failed = 0;
    std::string first;
    for (const auto& c : r.checks) {
        if (keep && !keep(c.id)) continue;
        ++n;
        if (!c.pass) {
            if (failed == 0) first = c.id + " (" + c.value + ")";
            ++failed;
        }
    }
    if (n == 0) return {false, "no checks selected"};
    if (failed) return {false, std::to_string(failed) + " of " + std::to_string(n) + " checks fail, first " + first};
    return {true, std::to_string(n) + " checks exact"};
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

// Runs `f` on every mode; failing values are prefixed with the mode.
Report over_modes(const std::vector<Mode>& modes, const std::function<Report(const Mode&)>& f) {
    Report out;
    for (const auto& k : modes) {
        Report r = f(k);
        for (auto& c : r.checks) {
            if (!c.pass) c.value = mode_string(k) + ": " + c.value;
            out.checks.push_back(c);
        }
    }
    return out;
}

Outcome criterion_01() {
    auto t0 = std::chrono::steady_clock::now();
    Report r = verify_contractions();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    Outcome o = summarize(r);
    if (r.checks.size() != 10) o = {false, std::to_string(r.checks.size()) + " identities, expected 10"};
    char buf[64];
    std::snprintf(buf, sizeof buf, ", %.3f s", secs);
    o.detail += buf;
    if (secs >= 5.0) o.pass = false;
    return o;
}

Outcome criterion_02() {
    RationalRng rng(2);
    Report r = verify_fundamental(rng, 100);
    Outcome o = summarize(r);
    if (o.pass) o.detail = "49 frame pairs and 100 random pairs exact";
    return o;
}

Outcome criterion_03() {
    RationalRng rng(3);
    Report r = verify_symmetric_sums(rng, 100);
    r.append(verify_frame_sums());
    Outcome o = summarize(r);
    if (o.pass) o.detail = std::to_string(r.checks.size()) + " identities exact (100 random h, m = 1..7)";
    return o;
}

Outcome criterion_04(const std::vector<Mode>& modes) {
    Report r = verify_component_figures(modes);
    int arrows = 0, zeros = 0;
    for (const auto& c : r.checks)
        if (starts_with(c.id, "d:")) (c.value == "zero" ? zeros : arrows)++;
    Outcome o = summarize(r, [](const std::string& id) { return starts_with(id, "d:"); });
    o.detail = std::to_string(arrows) + " nonzero arrows and " + std::to_string(zeros) +
               " vanishing slots (plus 14->14, which has no slot) on " + std::to_string(modes.size()) +
               " modes, " + o.detail;
    if (component_figure(ComponentOp::D).size() != 22 || zeros != 5) o.pass = false;
    return o;
}

Outcome criterion_05(const std::vector<Mode>& modes) {
    Report r = over_modes(modes, verify_relations);
    Outcome o = summarize(r, [](const std::string& id) { return starts_with(id, "rel-"); });
    o.detail += " over " + std::to_string(modes.size()) + " modes";
    return o;
}

Outcome criterion_06(const std::vector<Mode>& modes) {
    Report r = over_modes(modes, verify_relations);
    Outcome o = summarize(r, [](const std::string& id) {
        return starts_with(id, "adjoint-") || starts_with(id, "laplacian-");
    });
    o.detail += " over " + std::to_string(modes.size()) + " modes (incl. laplacian-flat)";
    return o;
}

Outcome criterion_07(const std::vector<Mode>& modes) {
    Report r = over_modes(modes, verify_harmonic_one_forms);
    Outcome o = summarize(r);
    o.detail += " over " + std::to_string(modes.size()) + " modes";
    return o;
}

Outcome criterion_08(const std::vector<Mode>& modes) {
    Report r = verify_iota_figures();
    r.append(verify_component_figures(modes));
    Outcome o = summarize(r, [](const std::string& id) { return !starts_with(id, "d:"); });
    o.detail += " (iota_B, iota_K, L_B, L_K)";
    return o;
}

Outcome criterion_09(const std::vector<Mode>& modes) {
    Report r = over_modes(modes, verify_commutation);
    Outcome o = summarize(r);
    o.detail += " over " + std::to_string(modes.size()) + " modes";
    return o;
}

Outcome criterion_10(const std::vector<Mode>& modes) {
    std::size_t bad = 0;
    std::string first;
    for (const auto& k : modes) {
        ComplexSnapshot s = mode_cohomology(k);
        bool ok = s.deg[3].H_phi > 0 && s.deg[3].H_phi == s.deg[4].H_phi;
        for (int j : {0, 1, 2, 5, 6, 7}) ok = ok && s.deg[j].H_phi == 0;
        for (int j : {0, 1, 6, 7}) ok = ok && s.deg[j].H_psi == 0;
        ok = ok && s.deg[2].H_psi > 0 && s.deg[2].H_psi == s.deg[5].H_psi && s.deg[3].H_psi == s.deg[4].H_psi;
        if (!ok && bad++ == 0) first = mode_string(k);
    }
    TruncatedCohomology t = truncated_cohomology(3);
    std::ostringstream os;
    bool increasing = true;
    std::int64_t prev = -1;
    os << "H3_phi(N=1..3) =";
    for (const auto& l : t.levels) {
        std::int64_t h = l.dims.deg[3].H_phi;
        os << " " << h;
        increasing = increasing && h > prev;
        prev = h;
    }
    Outcome o;
    o.pass = bad == 0 && increasing;
    o.detail = std::to_string(modes.size() - bad) + " of " + std::to_string(modes.size()) +
               " nonzero modes match both patterns, " + os.str();
    if (bad) o.detail += ", first mismatch at " + first;
    return o;
}

Outcome criterion_11() {
    RationalRng rng(11);
    Report all;
    int n = 0;
    while (n < 20) {
        Vector xi;
        bool nonzero = false;
        for (auto& x : xi) {
            x = rng.rational();
            nonzero = nonzero || sgn(x) != 0;
        }
        if (!nonzero) continue;
        all.append(verify_symbol_regularity(xi));
        ++n;
    }
    Outcome o = summarize(all);
    o.detail += " over 20 covectors";
    return o;
}

Outcome criterion_12(const std::vector<Mode>& modes) {
    Report r = over_modes(modes, verify_complex_figures);
    Outcome o = summarize(r, [](const std::string& id) {
        return id == "ker-LB-derham" || id == "ker-im-LB-trivial" || id == "im-d-ker-LB";
    });
    o.detail += " over " + std::to_string(modes.size()) + " modes";
    return o;
}

Outcome criterion_13() {
    std::vector<std::string> problems;
    DGA w = ce_complex(LieAlgebra::heisenberg());
    CohomologyBasis hw = cohomology(w);
    if (hw.betti() != std::vector<int>{1, 2, 2, 1}) problems.push_back("Betti numbers");
    Cochain e1 = w.parse("e1"), e2 = w.parse("e2");
    MasseyResult m = massey_triple(w, hw, e1, e2, e2);
    if (m.vanishes) problems.push_back("triple vanishes");
    RationalRng rng(13);
    MasseyStability s = massey_stability(w, hw, e1, e2, e2, rng, 20);
    if (s.flips || s.class_moves) problems.push_back("unstable under re-solving");

    DGA t = ce_complex(LieAlgebra::abelian({"e1", "e2", "e3"}));
    CohomologyBasis ht = cohomology(t);
    std::size_t defined = 0, nonvanishing = 0;
    for (auto& r : massey_sweep(t, ht, 1, 1, 1)) {
        ++defined;
        nonvanishing += !r.vanishes;
    }
    if (nonvanishing) problems.push_back("abelian triple nonvanishing");
    Outcome o;
    o.pass = problems.empty();
    std::ostringstream os;
    os << "Betti (1,2,2,1), <e1,e2,e2> = [" << w.format(m.representative) << "] nonzero, 20/20 stable; abelian: "
       << defined << " defined triples, " << nonvanishing << " nonvanishing";
    for (const auto& p : problems) os << "; " << p;
    o.detail = os.str();
    return o;
}

Outcome criterion_14() {
    ObstructionReport r = obstruction_check(parse_model_text(example_text("k3-connect-sum")).obstruction_input());
    bool classical = true;
    for (const auto& c : r.classical) classical = classical && c.pass;
    Outcome o;
    o.pass = r.betti_M.size() == 8 && r.betti_M[1] == 3 && r.betti_M[2] == 26 && r.betti_M[3] == 48 && classical &&
             r.verdict == "NO";
    std::ostringstream os;
    os << "b1 = " << r.betti_M[1] << ", b2 = " << r.betti_M[2] << ", b3 = " << r.betti_M[3] << ", classical "
       << (classical ? "pass" : "fail") << ", verdict " << r.verdict;
    o.detail = os.str();
    return o;
}

}  // namespace

int main() {
    RationalRng rng(2024);
    std::vector<Mode> modes20 = sample_modes(rng, 20, false);
    std::vector<Mode> modes50 = sample_modes(rng, 50, false);
    std::vector<Mode> modes50z = sample_modes(rng, 50, true);

    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> criteria{
        {"contractions", criterion_01},
        {"fundamental-identity", criterion_02},
        {"symmetric-and-frame-sums", criterion_03},
        {"d-components", [&] { return criterion_04(modes20); }},
        {"relations", [&] { return criterion_05(modes50); }},
        {"adjoints-laplacians", [&] { return criterion_06(modes50); }},
        {"harmonic-kernels", [&] { return criterion_07(modes50z); }},
        {"derivation-components", [&] { return criterion_08(modes20); }},
        {"commutation", [&] { return criterion_09(modes20); }},
        {"cohomology-pattern", [&] { return criterion_10(modes50); }},
        {"symbol-ranks", criterion_11},
        {"subcomplexes", [&] { return criterion_12(modes20); }},
        {"massey", criterion_13},
        {"obstruction", criterion_14},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        char id[24];
        std::snprintf(id, sizeof id, "%02zu", i + 1);
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion-" << id << " " << criteria[i].name << ": " << o.detail
                  << "\n";
    }
    std::cout << criteria.size() - failures << " of " << criteria.size() << " criteria pass\n";
    return failures ? 1 : 0;
}
