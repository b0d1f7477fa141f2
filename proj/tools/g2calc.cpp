#include "g2calc/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace g2calc;

namespace {

struct Output {
    std::string path;
    bool json = false;
};

int emit(const std::string& text, const Output& out) {
    if (out.path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(out.path);
    if (!f) {
        std::cerr << "error: cannot write " << out.path << "\n";
        return 2;
    }
    f << text;
    return 0;
}

int finish(const Document& d, const Output& out) {
    int rc = emit(out.json ? d.json.dump(2) + "\n" : d.text(), out);
    if (rc) return rc;
    return d.pass() ? 0 : 1;
}

ModelFile load_model(const std::string& file, const std::string& example, std::string& source) {
    if (!file.empty() && !example.empty()) throw CLI::ValidationError("give a model file or --example, not both");
    if (!file.empty()) {
        source = file;
        return parse_model_file(file);
    }
    if (example.empty()) throw CLI::ValidationError("a model file or --example is required");
    source = "example:" + example;
    return parse_model_text(example_text(example), source);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations for the flat G2 torus and G2 obstruction checks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    RunOptions opt;
    Output out;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--seed", opt.seed, "Seed for random samples")->capture_default_str();
        sub->add_option("--out", out.path, "Write the report to this path");
        sub->add_flag("--json", out.json, "Emit JSON");
    };

    std::string suite;
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(verify_suites()));
    verify->add_option("--modes", opt.modes, "Number of sample modes (or covectors)")->check(CLI::PositiveNumber);
    common(verify);

    int truncation = 0;
    std::string mode_text;
    auto* coh = app.add_subcommand("cohomology", "Cohomology dimensions per mode or over a truncation");
    auto* t_opt = coh->add_option("--truncation", truncation, "Max-norm truncation N")->check(CLI::Range(1, 6));
    auto* m_opt = coh->add_option("--mode", mode_text, "Mode k1,...,k7");
    t_opt->excludes(m_opt);
    coh->add_option("--threads", opt.threads, "Worker threads (0 reads G2CALC_THREADS)");
    common(coh);

    std::string ce_file, classes_text, example;
    auto* massey = app.add_subcommand("massey", "Massey triple products on a Chevalley-Eilenberg model");
    massey->add_option("--ce-file", ce_file, "Model file")->check(CLI::ExistingFile);
    massey->add_option("--classes", classes_text, "Three classes separated by ';'");
    massey->add_option("--example", example, "Built-in model")->check(CLI::IsMember(example_names()));
    common(massey);

    std::string input;
    auto* obstruct = app.add_subcommand("obstruct", "Topological obstructions to torsion-free G2-structures");
    obstruct->add_option("--input", input, "Obstruction input file")->check(CLI::ExistingFile);
    obstruct->add_option("--example", example, "Built-in input")->check(CLI::IsMember(example_names()));
    common(obstruct);

    std::string format = "csv";
    auto* tables = app.add_subcommand("tables", "Arrow constants of the component diagrams");
    tables->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    tables->add_option("--out", out.path, "Write the table to this path");
    tables->add_flag("--json", out.json, "Same as --format json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*verify) return finish(run_verify(suite, opt), out);
        if (*coh) {
            if (*m_opt) return finish(run_cohomology_mode(parse_mode(mode_text)), out);
            if (!*t_opt) throw CLI::ValidationError("--truncation or --mode is required");
            return finish(run_cohomology_truncation(truncation, opt), out);
        }
        if (*massey) {
            std::string source;
            ModelFile model = load_model(ce_file, example, source);
            std::optional<std::array<std::string, 3>> classes;
            if (!classes_text.empty()) classes = parse_classes(classes_text);
            return finish(run_massey(model, source, classes, opt), out);
        }
        if (*obstruct) {
            std::string source;
            ModelFile model = load_model(input, example, source);
            return finish(run_obstruct(model, source), out);
        }
        if (*tables) {
            bool json = out.json || format == "json";
            return emit(json ? arrow_tables_json().dump(2) + "\n" : arrow_tables_csv(), out);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
