#include "g2calc/commands.hpp"

#include "g2calc/decomp.hpp"
#include "g2calc/derivations.hpp"
#include "g2calc/g2.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace g2calc {

namespace {

Json check_json(const std::string& suite, const Check& c) {
    Json j;
    j["id"] = c.id;
    j["anchor"] = suite + "/" + c.id;
    j["statement"] = c.statement;
    j["pass"] = c.pass;
    j["value"] = c.value;
    return j;
}

Json runtime_json() {
    Json j;
    j["tool"] = "g2calc";
    j["version"] = kToolVersion;
    j["arithmetic"] = "exact rational (GMP)";
    return j;
}

Document make_document(const std::string& command, const std::string& suite, const Report& r, Json parameters,
                       Json data, std::optional<std::uint64_t> seed = std::nullopt) {
    Document d;
    Json& j = d.json;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["suite"] = suite;
    j["seed"] = seed ? Json(*seed) : Json(nullptr);
    j["parameters"] = std::move(parameters);
    Json summary;
    summary["checks"] = r.checks.size();
    summary["failures"] = r.failures();
    summary["pass"] = r.passed();
    j["summary"] = summary;
    j["checks"] = Json::array();
    for (const auto& c : r.checks) j["checks"].push_back(check_json(suite, c));
    j["data"] = data.is_null() ? Json::object() : std::move(data);
    j["runtime"] = runtime_json();
    return d;
}

// Merges per-mode reports: a check passes when it passes for every mode.
Report aggregate(const std::string& suite, const std::vector<Report>& reports, const std::vector<std::string>& labels) {
    Report out;
    out.suite = suite;
    std::vector<std::string> order;
    std::map<std::string, Check> merged;
    std::map<std::string, int> counts;
    for (std::size_t m = 0; m < reports.size(); ++m)
        for (const auto& c : reports[m].checks) {
            auto it = merged.find(c.id);
            if (it == merged.end()) {
                order.push_back(c.id);
                Check first = c;
                first.pass = true;
                first.value.clear();
                it = merged.emplace(c.id, first).first;
            }
            ++counts[c.id];
            if (!c.pass && it->second.pass) {
                it->second.pass = false;
                it->second.value = "fails at " + labels[m] + ": " + c.value;
            }
        }
    for (const auto& id : order) {
        Check c = merged.at(id);
        if (c.pass) c.value = "holds for " + std::to_string(counts.at(id)) + " of " + std::to_string(reports.size());
        out.checks.push_back(c);
    }
    return out;
}

Json modes_json(const std::vector<Mode>& modes) {
    Json j = Json::array();
    for (const auto& k : modes) j.push_back(mode_string(k));
    return j;
}

template <class F>
Document per_mode(const std::string& suite, const std::vector<Mode>& modes, const RunOptions& opt, F&& f) {
    std::vector<Report> reports;
    std::vector<std::string> labels;
    for (const auto& k : modes) {
        reports.push_back(f(k));
        labels.push_back("k = (" + mode_string(k) + ")");
    }
    Json params;
    params["modes"] = modes.size();
    Json data;
    data["modes"] = modes_json(modes);
    return make_document("verify", suite, aggregate(suite, reports, labels), params, data, opt.seed);
}

Json dims_json(const DegreeDims& d) {
    Json j;
    j["ker_d"] = d.ker_d;
    j["im_d"] = d.im_d;
    j["harmonic"] = d.harmonic;
    j["ker_LB"] = d.ker_LB;
    j["im_LB_cap_ker_LB"] = d.im_LB_ker_LB;
    j["H_phi"] = d.H_phi;
    j["ker_LK"] = d.ker_LK;
    j["im_LK"] = d.im_LK;
    j["H_psi"] = d.H_psi;
    j["im_d_cap_ker_LB"] = d.im_d_ker_LB;
    j["im_ds_cap_ker_LB"] = d.im_ds_ker_LB;
    j["im_d_cap_ker_LB_cap_ker_LBs"] = d.im_d_ker_LB_ker_LBs;
    j["im_ds_cap_ker_LB_cap_ker_LBs"] = d.im_ds_ker_LB_ker_LBs;
    j["H_ker_LB"] = d.H_ker_LB;
    j["H_ker_LB_cap_im_LB"] = d.H_ker_im_LB;
    j["rank_d_on_H_phi"] = d.d_on_H_phi;
    return j;
}

Json snapshot_json(const ComplexSnapshot& s) {
    Json j = Json::array();
    for (int deg = 0; deg <= kDim; ++deg) {
        Json row;
        row["degree"] = deg;
        Json dims = dims_json(s.deg[deg]);
        for (auto& [k, v] : dims.items()) row[k] = v;
        j.push_back(row);
    }
    return j;
}

template <class F>
Json column(const ComplexSnapshot& s, F&& f) {
    Json j = Json::array();
    for (int deg = 0; deg <= kDim; ++deg) j.push_back(f(s.deg[deg]));
    return j;
}

std::string join(const std::vector<std::int64_t>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

std::string join_q(const std::vector<Q>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
    return s + ")";
}

Json ints(const std::vector<int>& v) { return Json(v); }

}  // namespace

// ---------------------------------------------------------------------------

bool Document::pass() const { return json.at("summary").at("pass").get<bool>(); }

std::string Document::text() const {
    std::ostringstream os;
    os << "g2calc " << json.at("command").get<std::string>() << " " << json.at("suite").get<std::string>();
    if (!json.at("seed").is_null()) os << " (seed " << json.at("seed").get<std::uint64_t>() << ")";
    os << "\n";
    for (const auto& c : json.at("checks"))
        os << (c.at("pass").get<bool>() ? "PASS  " : "FAIL  ") << c.at("id").get<std::string>() << "  "
           << c.at("value").get<std::string>() << "\n";
    const auto& s = json.at("summary");
    os << s.at("checks").get<std::size_t>() << " checks, " << s.at("failures").get<std::size_t>() << " failures\n";
    if (!json.at("data").empty()) os << "data: " << json.at("data").dump(2) << "\n";
    return os.str();
}

const std::vector<std::string>& verify_suites() {
    static const std::vector<std::string> s{"algebra", "figures", "relations", "commutation",
                                            "kernels", "complexes", "symbol"};
    return s;
}

Document run_verify(const std::string& suite, const RunOptions& opt) {
    RationalRng rng(opt.seed);
    auto count = [&](int def) { return opt.modes > 0 ? opt.modes : def; };
    if (suite == "algebra") {
        Report r;
        r.suite = suite;
        r.append(verify_contractions(), "contraction/");
        r.append(verify_fundamental(rng, 100), "fundamental/");
        r.append(verify_wedge_identities(rng, 20), "wedge/");
        r.append(verify_cross_product(rng, 20), "cross/");
        r.append(verify_frame_sums(), "frame-sums/");
        r.append(verify_projectors(), "projectors/");
        r.append(verify_ell_maps(rng, 20), "ell/");
        r.append(verify_symmetric_sums(rng, 100), "symmetric/");
        r.append(verify_derivation_identities(rng, 20), "derivations/");
        return make_document("verify", suite, r, Json::object(), Json(), opt.seed);
    }
    if (suite == "figures") {
        std::vector<Mode> modes = sample_modes(rng, count(20), false);
        Report r;
        r.suite = suite;
        r.append(verify_iota_figures());
        r.append(verify_component_figures(modes));
        Json params;
        params["modes"] = modes.size();
        Json data;
        data["modes"] = modes_json(modes);
        return make_document("verify", suite, r, params, data, opt.seed);
    }
    if (suite == "relations")
        return per_mode(suite, sample_modes(rng, count(50), false), opt, [](const Mode& k) { return verify_relations(k); });
    if (suite == "commutation")
        return per_mode(suite, sample_modes(rng, count(20), false), opt,
                        [](const Mode& k) { return verify_commutation(k); });
    if (suite == "kernels")
        return per_mode(suite, sample_modes(rng, count(50), true), opt,
                        [](const Mode& k) { return verify_harmonic_one_forms(k); });
    if (suite == "complexes")
        return per_mode(suite, sample_modes(rng, count(20), true), opt,
                        [](const Mode& k) { return verify_complex_figures(k); });
    if (suite == "symbol") {
        int n = count(20);
        std::vector<Report> reports;
        std::vector<std::string> labels;
        Json xis = Json::array();
        while (static_cast<int>(reports.size()) < n) {
            Vector xi;
            for (auto& x : xi) x = rng.rational();
            if (std::all_of(xi.begin(), xi.end(), [](const Q& x) { return sgn(x) == 0; })) continue;
            reports.push_back(verify_symbol_regularity(xi));
            std::vector<Q> v(xi.begin(), xi.end());
            labels.push_back("xi = " + join_q(v));
            xis.push_back(join_q(v));
        }
        Json params;
        params["covectors"] = n;
        Json data;
        data["covectors"] = xis;
        return make_document("verify", suite, aggregate(suite, reports, labels), params, data, opt.seed);
    }
    throw std::invalid_argument("unknown suite '" + suite + "'");
}

// ---------------------------------------------------------------------------

Document run_cohomology_mode(const Mode& k) {
    ComplexSnapshot s = mode_cohomology(k);
    Report r = verify_complex_figures(k);
    r.suite = "mode";
    Json params;
    params["mode"] = mode_string(k);
    Json data;
    data["harmonic"] = column(s, [](const DegreeDims& d) { return d.harmonic; });
    data["H_phi"] = column(s, [](const DegreeDims& d) { return d.H_phi; });
    data["H_psi"] = column(s, [](const DegreeDims& d) { return d.H_psi; });
    data["degrees"] = snapshot_json(s);
    return make_document("cohomology", "mode", r, params, data);
}

Document run_cohomology_truncation(int n, const RunOptions& opt) {
    TruncatedCohomology t = truncated_cohomology(n, opt.threads);
    Report r;
    r.suite = "truncation";
    auto series = [&](auto field, int deg) {
        std::vector<std::int64_t> v;
        for (const auto& l : t.levels) v.push_back(field(l.dims.deg[deg]));
        return v;
    };
    auto phi = [](const DegreeDims& d) { return d.H_phi; };
    auto psi = [](const DegreeDims& d) { return d.H_psi; };
    auto harm = [](const DegreeDims& d) { return d.harmonic; };
    auto equal_derham = [&](auto field, int deg) {
        return series(field, deg) == series(harm, deg);
    };
    auto increasing = [](const std::vector<std::int64_t>& v) {
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i] <= v[i - 1]) return false;
        return true;
    };
    r.add("uniform-modes", "every nonzero mode has the same snapshot", t.uniform,
          std::to_string(t.orbits) + " orbits");
    for (int j : {0, 1, 2, 5, 6, 7})
        r.add("H-phi-derham-" + std::to_string(j), "H^" + std::to_string(j) + "_phi = H^" + std::to_string(j) + "_dR at every level",
              equal_derham(phi, j), join(series(phi, j)));
    r.add("H-phi-3-eq-4", "H^3_phi and H^4_phi have equal dimension at every level", series(phi, 3) == series(phi, 4),
          join(series(phi, 3)));
    for (int j : {3, 4})
        r.add("H-phi-growth-" + std::to_string(j), "dim H^" + std::to_string(j) + "_phi strictly increases with the truncation",
              increasing(series(phi, j)), join(series(phi, j)));
    for (int j : {0, 1, 6, 7})
        r.add("H-psi-derham-" + std::to_string(j), "H^" + std::to_string(j) + "_psi = H^" + std::to_string(j) + "_dR at every level",
              equal_derham(psi, j), join(series(psi, j)));
    for (int j : {2, 3, 4, 5})
        r.add("H-psi-growth-" + std::to_string(j), "dim H^" + std::to_string(j) + "_psi strictly increases with the truncation",
              increasing(series(psi, j)), join(series(psi, j)));

    Json params;
    params["truncation"] = n;
    Json data;
    data["orbits"] = t.orbits;
    data["nonzero_mode"] = Json::object();
    data["nonzero_mode"]["H_phi"] = column(t.nonzero_mode, phi);
    data["nonzero_mode"]["H_psi"] = column(t.nonzero_mode, psi);
    data["growth"] = Json::array();
    data["levels"] = Json::array();
    for (const auto& l : t.levels) {
        Json g;
        g["n"] = l.n;
        g["modes"] = l.modes;
        g["H3_phi"] = l.dims.deg[3].H_phi;
        g["H4_phi"] = l.dims.deg[4].H_phi;
        data["growth"].push_back(g);
        Json lv;
        lv["n"] = l.n;
        lv["modes"] = l.modes;
        lv["harmonic"] = column(l.dims, harm);
        lv["H_phi"] = column(l.dims, phi);
        lv["H_psi"] = column(l.dims, psi);
        lv["degrees"] = snapshot_json(l.dims);
        data["levels"].push_back(lv);
    }
    return make_document("cohomology", "truncation", r, params, data);
}

// ---------------------------------------------------------------------------

namespace {

constexpr const char* kCoset = "compared modulo indeterminacy";

Json massey_json(const DGA& a, const MasseyResult& m) {
    Json j;
    j["degrees"] = {m.p, m.q, m.r};
    j["a"] = a.format(m.a);
    j["b"] = a.format(m.b);
    j["c"] = a.format(m.c);
    j["f"] = a.format(m.f);
    j["g"] = a.format(m.g);
    j["representative"] = a.format(m.representative);
    j["class"] = join_q(m.rep_class);
    j["indeterminacy_dim"] = m.indeterminacy.cols();
    j["vanishes"] = m.vanishes;
    return j;
}

LieAlgebra negated(const LieAlgebra& g) {
    LieAlgebra h = g;
    for (auto& x : h.c) x = -x;
    return h;
}

}  // namespace

Document run_massey(const ModelFile& model, const std::string& source,
                    const std::optional<std::array<std::string, 3>>& classes, const RunOptions& opt) {
    RationalRng rng(opt.seed);
    DGA w = ce_complex(model.algebra);
    CohomologyBasis hw = cohomology(w);
    Report r;
    r.suite = "massey";
    r.append(verify_dga(w), "dga/");

    std::vector<std::array<std::string, 3>> triples = classes ? std::vector{*classes} : model.massey;
    Json data;
    data["model"] = model.algebra.name;
    data["betti"] = ints(hw.betti());
    data["products"] = Json::array();

    std::optional<DGA> second;
    if (!model.torus.empty()) second = ce_complex(LieAlgebra::abelian(model.torus, "torus"));
    else if (!model.parts.empty()) second = four_manifold_model(model.parts);
    std::optional<DGA> m;
    std::optional<CohomologyBasis> hm;
    DgaMorphism incl, proj;
    if (second) {
        m = tensor_product(w, *second);
        hm = cohomology(*m);
        incl = include_left(w, *second);
        proj = project_left(w, *second);
        r.append(verify_morphism(incl, w, *m), "pullback/");
        r.append(verify_morphism(proj, *m, w), "projection/");
        data["product_betti"] = ints(hm->betti());
    }

    DGA flipped = ce_complex(negated(model.algebra));
    CohomologyBasis hf = cohomology(flipped);

    int index = 0;
    for (const auto& t : triples) {
        ++index;
        std::string tag = "triple-" + std::to_string(index);
        Json entry;
        entry["classes"] = {t[0], t[1], t[2]};
        Cochain x = w.parse(t[0]), y = w.parse(t[1]), z = w.parse(t[2]);
        MasseyResult base;
        try {
            base = massey_triple(w, hw, x, y, z);
        } catch (const MasseyUndefined& e) {
            entry["defined"] = false;
            entry["error"] = e.what();
            data["products"].push_back(entry);
            continue;
        }
        entry["defined"] = true;
        entry["result"] = massey_json(w, base);

        MasseyStability st = massey_stability(w, hw, x, y, z, rng, 20);
        r.add(tag + "/stability", "re-solving with shifted primitives keeps the verdict and the coset",
              st.flips == 0 && st.class_moves == 0,
              std::to_string(st.trials) + " trials, " + std::to_string(st.flips) + " flips, " +
                  std::to_string(st.class_moves) + " coset changes");

        MasseyResult scaled = massey_triple(w, hw, Q(2) * x, Q(-3) * y, Q(5, 7) * z);
        r.add(tag + "/rescaling", "rescaling the classes by nonzero scalars keeps the verdict",
              scaled.vanishes == base.vanishes, scaled.vanishes ? "vanishes" : "nonvanishing");
        MasseyResult doubled = massey_triple(w, hw, Q(2) * x, y, z);
        r.add(tag + "/linearity", "<2a,b,c> = 2<a,b,c> modulo indeterminacy",
              in_indeterminacy(w, hw, doubled, doubled.representative - Q(2) * base.representative), kCoset);

        try {
            MasseyResult fm = massey_triple(flipped, hf, flipped.parse(t[0]), flipped.parse(t[1]), flipped.parse(t[2]));
            r.add(tag + "/sign-convention", "the opposite sign convention for d gives the same verdict",
                  fm.vanishes == base.vanishes, fm.vanishes ? "vanishes" : "nonvanishing");
        } catch (const MasseyUndefined& e) {
            r.add(tag + "/sign-convention", "the opposite sign convention for d gives the same verdict", false, e.what());
        }

        if (m) {
            try {
                MasseyResult pm = massey_triple(*m, *hm, incl.apply(x), incl.apply(y), incl.apply(z));
                entry["pullback"] = massey_json(*m, pm);
                r.add(tag + "/naturality-pullback", "the pulled-back product contains the pullback of the product",
                      in_indeterminacy(*m, *hm, pm, pm.representative - incl.apply(base.representative)), kCoset);
                r.add(tag + "/naturality-projection",
                      "projecting the product on the factor back gives the original product",
                      in_indeterminacy(w, hw, base, proj.apply(pm.representative) - base.representative), kCoset);
            } catch (const MasseyUndefined& e) {
                r.add(tag + "/naturality-pullback", "the pulled-back product is defined", false, e.what());
            }
        }
        data["products"].push_back(entry);
    }

    if (triples.empty()) {
        std::vector<MasseyResult> sweep = massey_sweep(w, hw, 1, 1, 1);
        int nonvanishing = 0;
        Json list = Json::array();
        for (const auto& s : sweep) {
            nonvanishing += !s.vanishes;
            list.push_back(massey_json(w, s));
        }
        data["sweep"] = Json::object();
        data["sweep"]["degrees"] = {1, 1, 1};
        data["sweep"]["defined"] = sweep.size();
        data["sweep"]["nonvanishing"] = nonvanishing;
        data["sweep"]["products"] = list;
        int unstable = 0;
        for (const auto& s : sweep) {
            MasseyStability st = massey_stability(w, hw, s.a, s.b, s.c, rng, 20);
            unstable += st.flips != 0 || st.class_moves != 0;
        }
        r.add("sweep/stability", "re-solving with shifted primitives keeps every verdict", unstable == 0,
              std::to_string(sweep.size()) + " products, " + std::to_string(unstable) + " unstable");
    }

    Json params;
    params["source"] = source;
    params["classes"] = Json::array();
    for (const auto& t : triples) params["classes"].push_back(t[0] + " ; " + t[1] + " ; " + t[2]);
    return make_document("massey", model.algebra.name, r, params, data, opt.seed);
}

Document run_obstruct(const ModelFile& model, const std::string& source) {
    ObstructionReport o = obstruction_check(model.obstruction_input());
    Report r;
    r.suite = "obstruct";
    std::vector<int> kb = kunneth_betti(o.betti_W, o.betti_L);
    r.add("kunneth", "Betti numbers of the product model match the Kunneth formula", kb == o.betti_M,
          "(" + [&] {
              std::string s;
              for (std::size_t i = 0; i < kb.size(); ++i) s += (i ? "," : "") + std::to_string(kb[i]);
              return s;
          }() + ")");
    int index = 0;
    for (const auto& e : o.massey) {
        ++index;
        if (!e.defined) continue;
        r.add("triple-" + std::to_string(index) + "/naturality", "the pulled-back product contains the pullback of the product",
              e.naturality, e.naturality ? "difference lies in the indeterminacy" : "difference leaves the indeterminacy");
    }

    Json data;
    data["model"] = o.name;
    data["betti_W"] = ints(o.betti_W);
    data["betti_L"] = ints(o.betti_L);
    data["betti_M"] = ints(o.betti_M);
    data["signature_L"] = o.signature_L;
    data["even_L"] = o.even_L;
    data["obstructions"] = Json::array();
    for (const auto& c : o.classical) {
        Json j;
        j["id"] = c.id;
        j["statement"] = c.statement;
        j["satisfied"] = c.pass;
        j["value"] = c.value;
        data["obstructions"].push_back(j);
    }
    index = 0;
    for (const auto& e : o.massey) {
        ++index;
        Json j;
        j["id"] = "massey-" + std::to_string(index);
        j["statement"] = "no nonvanishing Massey product outside the degree filter";
        j["satisfied"] = !e.obstructs;
        j["classes"] = {e.classes[0], e.classes[1], e.classes[2]};
        j["degrees"] = {e.degrees[0], e.degrees[1], e.degrees[2]};
        j["defined"] = e.defined;
        if (!e.defined) j["error"] = e.error;
        j["vanishes_on_W"] = e.vanishes_on_W;
        j["vanishes_on_M"] = e.vanishes_on_M;
        j["filter_guarantees_vanishing"] = e.filter.guaranteed;
        j["filter_reason"] = e.filter.reason;
        data["obstructions"].push_back(j);
    }
    data["verdict"] = o.verdict;
    data["conclusion"] = o.obstructed ? "no torsion-free G2-structure" : "no obstruction found";

    Json params;
    params["source"] = source;
    return make_document("obstruct", o.name, r, params, data);
}

// ---------------------------------------------------------------------------

namespace {

struct TableRow {
    std::string op;
    Arrow a;
};

std::vector<TableRow> table_rows() {
    std::vector<TableRow> rows;
    for (Derivation d : {Derivation::IotaB, Derivation::IotaK})
        for (const auto& a : iota_figure(d)) rows.push_back({derivation_name(d), a});
    for (ComponentOp c : {ComponentOp::D, ComponentOp::LB, ComponentOp::LK})
        for (const auto& a : component_figure(c)) rows.push_back({component_op_name(c), a});
    return rows;
}

std::string reference_name(const Arrow& a) { return a.reference.empty() ? "id" : "D" + a.reference; }

}  // namespace

Json arrow_tables_json() {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "tables";
    j["rows"] = Json::array();
    for (const auto& row : table_rows()) {
        Json r;
        r["operator"] = row.op;
        r["from"] = row.a.from.str();
        r["to"] = row.a.to.str();
        r["constant"] = to_string(row.a.c);
        r["reference"] = reference_name(row.a);
        j["rows"].push_back(r);
    }
    j["runtime"] = runtime_json();
    return j;
}

std::string arrow_tables_csv() {
    std::string s = "operator,from,to,constant,reference\n";
    for (const auto& row : table_rows())
        s += row.op + "," + row.a.from.str() + "," + row.a.to.str() + "," + to_string(row.a.c) + "," +
             reference_name(row.a) + "\n";
    return s;
}

}  // namespace g2calc
