#include "g2calc/massey_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace g2calc {

namespace {

std::string strip_comment(const std::string& line) {
    auto h = line.find('#');
    return h == std::string::npos ? line : line.substr(0, h);
}

std::vector<std::string> words(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string w; is >> w;) out.push_back(w);
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

const std::map<std::string, std::string>& examples() {
    static const std::map<std::string, std::string> m{
        {"iwasawa",
         "name iwasawa\n"
         "generators e1 e2 e3\n"
         "bracket e1 e2 = e3\n"
         "massey e1 ; e2 ; e2\n"},
        {"torus3",
         "name torus3\n"
         "generators e1 e2 e3\n"},
        {"iwasawa-product",
         "name iwasawa-product\n"
         "generators e1 e2 e3\n"
         "bracket e1 e2 = e3\n"
         "massey e1 ; e2 ; e2\n"
         "torus f1 f2 f3 f4\n"},
        {"k3-connect-sum",
         "name k3-connect-sum\n"
         "generators e1 e2 e3\n"
         "differential e3 = -e1^e2\n"
         "massey e1 ; e2 ; e2\n"
         "part K3 betti 1 0 22 0 1 form -E8 -E8 H H H\n"
         "part S1xS3 betti 1 1 0 1 1 form none\n"},
        {"t7",
         "name t7\n"
         "generators e1 e2 e3\n"
         "part T4 betti 1 4 6 4 1 form H H H\n"},
    };
    return m;
}

}  // namespace

ObstructionInput ModelFile::obstruction_input() const {
    ObstructionInput in;
    in.name = algebra.name;
    in.w = algebra;
    in.massey = massey;
    in.l_parts = parts;
    return in;
}

std::array<std::string, 3> parse_classes(const std::string& text) {
    std::vector<std::string> items;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ';');) items.push_back(trim(item));
    if (items.size() != 3 || std::any_of(items.begin(), items.end(), [](const auto& s) { return s.empty(); }))
        throw std::invalid_argument("expected three classes separated by ';', got '" + text + "'");
    return {items[0], items[1], items[2]};
}

ModelFile parse_model(std::istream& in, const std::string& source) {
    ModelFile out;
    out.algebra.name = "model";
    bool have_generators = false;
    std::map<std::string, int> seen_parts;
    DGA free;  // exterior algebra on the generators, for parsing expressions
    int lineno = 0;
    auto fail = [&](const std::string& msg) -> ParseError {
        return ParseError(source + ":" + std::to_string(lineno) + ": " + msg);
    };
    for (std::string raw; std::getline(in, raw);) {
        ++lineno;
        std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        auto w = words(line);
        const std::string& key = w[0];
        std::string rest = trim(line.substr(key.size()));
        try {
            if (key == "name") {
                if (w.size() != 2) throw fail("'name' takes one word");
                out.algebra.name = w[1];
            } else if (key == "generators") {
                if (have_generators) throw fail("generators given twice");
                std::vector<std::string> names(w.begin() + 1, w.end());
                if (names.empty()) throw fail("no generators");
                for (const auto& n : names) {
                    if (n == "1" || n.find_first_of("^*/+-;=") != std::string::npos ||
                        std::isdigit(static_cast<unsigned char>(n[0])))
                        throw fail("invalid generator name '" + n + "'");
                    if (std::count(names.begin(), names.end(), n) > 1) throw fail("duplicate generator '" + n + "'");
                }
                std::string name = out.algebra.name;
                out.algebra = LieAlgebra::abelian(names, name);
                free = ce_complex(out.algebra);
                have_generators = true;
            } else if (key == "bracket" || key == "differential") {
                if (!have_generators) throw fail("'" + key + "' before 'generators'");
                auto eq = rest.find('=');
                if (eq == std::string::npos) throw fail("missing '='");
                auto lhs = words(rest.substr(0, eq));
                std::string rhs = trim(rest.substr(eq + 1));
                auto index = [&](const std::string& g) {
                    auto it = std::find(out.algebra.names.begin(), out.algebra.names.end(), g);
                    if (it == out.algebra.names.end()) throw fail("unknown generator '" + g + "'");
                    return static_cast<int>(it - out.algebra.names.begin());
                };
                int n = out.algebra.n();
                if (key == "bracket") {
                    if (lhs.size() != 2) throw fail("'bracket' needs two generators before '='");
                    int i = index(lhs[0]), j = index(lhs[1]);
                    if (i == j) throw fail("bracket of a generator with itself");
                    Cochain v = free.parse(rhs);
                    if (v.degree != 1) throw fail("bracket value must be a combination of generators");
                    out.algebra.set_bracket(i, j, v.c);
                } else {
                    if (lhs.size() != 1) throw fail("'differential' needs one generator before '='");
                    int k = index(lhs[0]);
                    Cochain v = free.parse(rhs);
                    if (v.degree != 2 && !v.is_zero()) throw fail("differential of a generator must be a 2-form");
                    int pos = 0;
                    for (int i = 0; i < n; ++i)
                        for (int j = i + 1; j < n; ++j, ++pos) {
                            Q c = v.degree == 2 ? -v.c[pos] : Q(0);
                            out.algebra.at(k, i, j) = c;
                            out.algebra.at(k, j, i) = -c;
                        }
                }
            } else if (key == "massey") {
                out.massey.push_back(parse_classes(rest));
            } else if (key == "torus") {
                if (!out.torus.empty()) throw fail("torus given twice");
                if (w.size() < 2) throw fail("'torus' needs generator names");
                out.torus.assign(w.begin() + 1, w.end());
            } else if (key == "part") {
                // part NAME betti b0 b1 b2 b3 b4 form BLOCK... | none
                if (w.size() < 10 || w[2] != "betti" || w[8] != "form")
                    throw fail("expected 'part NAME betti b0 b1 b2 b3 b4 form BLOCKS'");
                FourManifoldPart p;
                p.name = w[1];
                if (seen_parts[p.name]++) throw fail("duplicate part '" + p.name + "'");
                for (int i = 0; i < 5; ++i) {
                    std::size_t used = 0;
                    p.betti[i] = std::stoi(w[3 + i], &used);
                    if (used != w[3 + i].size()) throw fail("invalid Betti number '" + w[3 + i] + "'");
                }
                std::vector<std::string> blocks(w.begin() + 9, w.end());
                if (blocks.size() == 1 && blocks[0] == "none") blocks.clear();
                p.form = blocks.empty() ? MatQ(0, 0) : form_from_blocks(blocks);
                if (p.form.rows() != p.betti[2])
                    throw fail("form has rank " + std::to_string(p.form.rows()) + " but b2 = " +
                               std::to_string(p.betti[2]));
                out.parts.push_back(std::move(p));
            } else {
                throw fail("unknown keyword '" + key + "'");
            }
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw fail(e.what());
        }
    }
    if (!have_generators) throw ParseError(source + ": no 'generators' line");
    Q jac = out.algebra.jacobi_residual();
    if (sgn(jac) != 0) throw ParseError(source + ": Jacobi identity fails (residual " + to_string(jac) + ")");
    return out;
}

ModelFile parse_model_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError(path + ": cannot open");
    return parse_model(f, path);
}

ModelFile parse_model_text(const std::string& text, const std::string& source) {
    std::istringstream is(text);
    return parse_model(is, source);
}

const std::vector<std::string>& example_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, _] : examples()) v.push_back(k);
        return v;
    }();
    return names;
}

std::string example_text(const std::string& name) {
    auto it = examples().find(name);
    if (it == examples().end()) throw std::invalid_argument("unknown example '" + name + "'");
    return it->second;
}

}  // namespace g2calc
