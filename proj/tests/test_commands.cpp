#include "g2calc/commands.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>

using namespace g2calc;

namespace {

void check_schema(const Json& j, const std::string& command) {
    CHECK(j.at("schema_version") == kSchemaVersion);
    CHECK(j.at("command") == command);
    for (const char* key : {"suite", "seed", "parameters", "summary", "checks", "data", "runtime"})
        CHECK_MESSAGE(j.contains(key), key);
    CHECK(j.at("summary").at("checks") == j.at("checks").size());
    for (const auto& c : j.at("checks")) {
        CHECK(c.at("anchor").get<std::string>() == j.at("suite").get<std::string>() + "/" + c.at("id").get<std::string>());
        CHECK_FALSE(c.at("value").get<std::string>().empty());
    }
}

}  // namespace

TEST_CASE("verify reports are deterministic for a fixed seed") {
    RunOptions opt;
    opt.seed = 7;
    opt.modes = 3;
    Document a = run_verify("relations", opt), b = run_verify("relations", opt);
    CHECK(a.json.dump() == b.json.dump());
    CHECK(a.text() == b.text());
    check_schema(a.json, "verify");
    CHECK(a.pass());
    RunOptions other = opt;
    other.seed = 8;
    CHECK(run_verify("symbol", other).json.at("data").dump() != run_verify("symbol", opt).json.at("data").dump());
}

TEST_CASE("every suite passes on a small sample") {
    RunOptions opt;
    opt.modes = 2;
    for (const auto& s : verify_suites()) {
        Document d = run_verify(s, opt);
        check_schema(d.json, "verify");
        CHECK_MESSAGE(d.pass(), s);
    }
    CHECK_THROWS_AS(run_verify("nope", opt), std::invalid_argument);
}

TEST_CASE("cohomology documents") {
    Document z = run_cohomology_mode(Mode{});
    check_schema(z.json, "cohomology");
    CHECK(z.json.at("data").at("H_phi") == Json({1, 7, 21, 35, 35, 21, 7, 1}));
    Document m = run_cohomology_mode(parse_mode("1,2,0,0,0,0,-1"));
    CHECK(m.json.at("data").at("H_phi") == Json({0, 0, 0, 14, 14, 0, 0, 0}));
    CHECK(m.json.at("data").at("H_psi") == Json({0, 0, 9, 27, 27, 9, 0, 0}));
    CHECK(m.pass());
    RunOptions opt;
    opt.threads = 2;
    Document t = run_cohomology_truncation(1, opt);
    check_schema(t.json, "cohomology");
    CHECK(t.pass());
    CHECK(t.text().find("15337") != std::string::npos);
}

TEST_CASE("massey documents") {
    RunOptions opt;
    ModelFile iw = parse_model_text(example_text("iwasawa"));
    Document d = run_massey(iw, "example:iwasawa", std::nullopt, opt);
    check_schema(d.json, "massey");
    CHECK(d.pass());
    CHECK(d.json.dump() == run_massey(iw, "example:iwasawa", std::nullopt, opt).json.dump());

    Document t = run_massey(parse_model_text(example_text("torus3")), "t", std::nullopt, opt);
    CHECK(t.pass());

    Document c = run_massey(iw, "x", std::array<std::string, 3>{"e1", "e2", "e2"}, opt);
    CHECK(c.pass());
    CHECK_THROWS(run_massey(iw, "x", std::array<std::string, 3>{"e1", "e9", "e2"}, opt));
}

TEST_CASE("obstruct documents") {
    Document k3 = run_obstruct(parse_model_text(example_text("k3-connect-sum")), "k3");
    check_schema(k3.json, "obstruct");
    CHECK(k3.pass());
    CHECK(k3.json.at("data").at("verdict") == "NO");
    CHECK(k3.text().find("NO") != std::string::npos);
    Document t7 = run_obstruct(parse_model_text(example_text("t7")), "t7");
    CHECK(t7.json.at("data").at("verdict") == "COMPATIBLE");
}

TEST_CASE("arrow tables") {
    Json j = arrow_tables_json();
    std::string csv = arrow_tables_csv();
    std::size_t lines = std::count(csv.begin(), csv.end(), '\n');
    CHECK(lines == j.at("rows").size() + 1);
    CHECK(csv.rfind("operator,from,to,constant,reference\n", 0) == 0);
    std::map<std::string, int> per_op;
    for (const auto& r : j.at("rows")) ++per_op[r.at("operator").get<std::string>()];
    CHECK(per_op["d"] == 22);
    CHECK(per_op["L_B"] == 16);
    CHECK(per_op["L_K"] == 10);
}
