#include "g2calc/massey.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <map>
#include <sstream>

namespace g2calc {

namespace {

MatQ column_of(const std::vector<Q>& v) { return MatQ::column(v); }

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

std::string join_ints(const std::vector<Q>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
    return s + ")";
}

// Zero matrix for a map between possibly empty degrees.
MatQ zeros(int rows, int cols) { return MatQ(std::max(rows, 0), std::max(cols, 0)); }

}  // namespace

// ---------------------------------------------------------------------------
// Cochains

bool Cochain::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](const Q& x) { return sgn(x) == 0; });
}

Cochain operator+(const Cochain& a, const Cochain& b) {
    if (a.degree != b.degree || a.c.size() != b.c.size()) throw std::invalid_argument("cochain degree mismatch");
    Cochain out = a;
    for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] += b.c[i];
    return out;
}

Cochain operator-(const Cochain& a, const Cochain& b) { return a + Q(-1) * b; }

Cochain operator*(const Q& s, const Cochain& a) {
    Cochain out = a;
    for (auto& x : out.c) x *= s;
    return out;
}

// ---------------------------------------------------------------------------
// DGA

int DGA::dim(int p) const { return p < 0 || p > top() ? 0 : static_cast<int>(names[p].size()); }

Cochain DGA::zero(int p) const { return Cochain{p, std::vector<Q>(dim(p))}; }

Cochain DGA::unit() const { return basis(0, 0); }

Cochain DGA::basis(int p, int i) const {
    Cochain c = zero(p);
    if (i < 0 || i >= dim(p)) throw std::out_of_range("basis index out of range");
    c.c[i] = 1;
    return c;
}

Cochain DGA::multiply(const Cochain& a, const Cochain& b) const {
    Cochain out = zero(a.degree + b.degree);
    if (dim(a.degree) == 0 || dim(b.degree) == 0 || out.c.empty()) return out;
    for (int i = 0; i < dim(a.degree); ++i) {
        if (sgn(a.c[i]) == 0) continue;
        std::vector<Q> v = mul[a.degree][b.degree][i] * b.c;
        for (std::size_t k = 0; k < v.size(); ++k) out.c[k] += a.c[i] * v[k];
    }
    return out;
}

Cochain DGA::differential(const Cochain& a) const {
    Cochain out = zero(a.degree + 1);
    if (dim(a.degree) == 0 || out.c.empty()) return out;
    out.c = d[a.degree] * a.c;
    return out;
}

Cochain DGA::parse(const std::string& expr) const {
    std::string s;
    for (char ch : expr)
        if (ch != ' ' && ch != '\t') s += ch;
    if (s.empty()) throw std::invalid_argument("empty expression");
    std::vector<std::pair<int, std::string>> terms;
    int sign = 1;
    std::string cur;
    for (char ch : s) {
        if (ch == '+' || ch == '-') {
            if (!cur.empty()) {
                terms.emplace_back(sign, cur);
                cur.clear();
                sign = 1;
            }
            if (ch == '-') sign = -sign;
            continue;
        }
        cur += ch;
    }
    if (cur.empty()) throw std::invalid_argument("dangling sign in '" + expr + "'");
    terms.emplace_back(sign, cur);

    std::optional<Cochain> total;
    for (auto& [sg, term] : terms) {
        Q coef = sg;
        std::string mono = term;
        auto star = term.find('*');
        if (star != std::string::npos) {
            coef *= parse_rational(term.substr(0, star));
            mono = term.substr(star + 1);
        } else {
            std::size_t k = 0;
            while (k < term.size() && (std::isdigit(static_cast<unsigned char>(term[k])) || term[k] == '/')) ++k;
            if (k == term.size()) {
                coef *= parse_rational(term);
                mono = "1";
            } else if (k > 0) {
                coef *= parse_rational(term.substr(0, k));
                mono = term.substr(k);
            }
        }
        Cochain value = unit();
        if (mono != "1") {
            for (const auto& g : split(mono, '^')) {
                auto it = std::find(generator_names.begin(), generator_names.end(), g);
                if (it == generator_names.end()) throw std::invalid_argument("unknown generator '" + g + "'");
                value = multiply(value, generators[it - generator_names.begin()]);
            }
        }
        value = coef * value;
        if (total && total->degree != value.degree)
            throw std::invalid_argument("inhomogeneous expression '" + expr + "'");
        total = total ? *total + value : value;
    }
    return *total;
}

std::string DGA::format(const Cochain& a) const {
    std::string s;
    for (int i = 0; i < static_cast<int>(a.c.size()); ++i) {
        const Q& x = a.c[i];
        if (sgn(x) == 0) continue;
        Q ax = abs(x);
        if (s.empty())
            s += sgn(x) < 0 ? "-" : "";
        else
            s += sgn(x) < 0 ? " - " : " + ";
        const std::string& n = names[a.degree][i];
        if (ax != 1 || n == "1") s += to_string(ax) + (n == "1" ? "" : " ");
        if (n != "1") s += n;
    }
    return s.empty() ? "0" : s;
}

Report verify_dga(const DGA& a) {
    Report r;
    r.suite = "dga";
    Q dd, leibniz, comm, assoc, unit;
    auto track = [](Q& w, const Cochain& c) {
        for (const auto& x : c.c)
            if (abs(x) > w) w = abs(x);
    };
    for (int p = 0; p <= a.top(); ++p)
        for (int i = 0; i < a.dim(p); ++i) {
            Cochain x = a.basis(p, i);
            track(dd, a.differential(a.differential(x)));
            track(unit, a.multiply(a.unit(), x) - x);
            track(unit, a.multiply(x, a.unit()) - x);
            for (int q = 0; q <= a.top(); ++q)
                for (int j = 0; j < a.dim(q); ++j) {
                    Cochain y = a.basis(q, j);
                    Cochain xy = a.multiply(x, y);
                    Q s = (p * q) % 2 ? -1 : 1;
                    track(comm, xy - s * a.multiply(y, x));
                    Q e = p % 2 ? -1 : 1;
                    track(leibniz, a.differential(xy) - a.multiply(a.differential(x), y) -
                                       e * a.multiply(x, a.differential(y)));
                }
        }
    // Associativity on generators and basis elements of degree ≤ 2 keeps the cost bounded.
    for (int p = 0; p <= std::min(a.top(), 2); ++p)
        for (int i = 0; i < a.dim(p); ++i)
            for (int q = 0; q <= std::min(a.top(), 2); ++q)
                for (int j = 0; j < a.dim(q); ++j)
                    for (int s = 0; s <= a.top(); ++s)
                        for (int k = 0; k < a.dim(s); ++k) {
                            Cochain x = a.basis(p, i), y = a.basis(q, j), z = a.basis(s, k);
                            track(assoc, a.multiply(a.multiply(x, y), z) - a.multiply(x, a.multiply(y, z)));
                        }
    r.add_residual("d-squared", "d d = 0", dd);
    r.add_residual("leibniz", "d(ab) = (da)b + (-1)^|a| a(db)", leibniz);
    r.add_residual("graded-commutative", "ab = (-1)^{|a||b|} ba", comm);
    r.add_residual("associative", "(ab)c = a(bc)", assoc);
    r.add_residual("unit", "1 a = a 1 = a", unit);
    return r;
}

// ---------------------------------------------------------------------------
// Lie algebras and Chevalley-Eilenberg complexes

LieAlgebra LieAlgebra::abelian(const std::vector<std::string>& names, std::string name) {
    LieAlgebra g;
    g.name = std::move(name);
    g.names = names;
    g.c.assign(static_cast<std::size_t>(g.n()) * g.n() * g.n(), Q(0));
    return g;
}

LieAlgebra LieAlgebra::heisenberg(std::string name) {
    LieAlgebra g = abelian({"e1", "e2", "e3"}, std::move(name));
    g.set_bracket(0, 1, {0, 0, 1});
    return g;
}

void LieAlgebra::set_bracket(int i, int j, const std::vector<Q>& coeffs) {
    if (i == j) throw std::invalid_argument("bracket of a generator with itself");
    for (int k = 0; k < n(); ++k) {
        at(k, i, j) = coeffs[k];
        at(k, j, i) = -coeffs[k];
    }
}

Q LieAlgebra::jacobi_residual() const {
    int m = n();
    Q worst;
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            for (int z = 0; z < m; ++z)
                for (int l = 0; l < m; ++l) {
                    // [[x,y],z] + [[y,z],x] + [[z,x],y] in component l.
                    Q s;
                    for (int k = 0; k < m; ++k)
                        s += at(k, x, y) * at(l, k, z) + at(k, y, z) * at(l, k, x) + at(k, z, x) * at(l, k, y);
                    if (abs(s) > worst) worst = abs(s);
                }
    return worst;
}

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
    std::vector<std::string> names = a.names;
    for (const auto& n : b.names) {
        if (std::find(names.begin(), names.end(), n) != names.end())
            throw std::invalid_argument("generator '" + n + "' appears in both summands");
        names.push_back(n);
    }
    LieAlgebra g = LieAlgebra::abelian(names, a.name + "+" + b.name);
    int na = a.n();
    for (int k = 0; k < na; ++k)
        for (int i = 0; i < na; ++i)
            for (int j = 0; j < na; ++j) g.at(k, i, j) = a.at(k, i, j);
    for (int k = 0; k < b.n(); ++k)
        for (int i = 0; i < b.n(); ++i)
            for (int j = 0; j < b.n(); ++j) g.at(na + k, na + i, na + j) = b.at(k, i, j);
    return g;
}

namespace {

// Exterior algebra on n degree-one generators, basis per degree in lexicographic order.
struct ExteriorBasis {
    int n = 0;
    std::vector<std::vector<std::uint32_t>> masks;
    std::map<std::uint32_t, int> index;

    explicit ExteriorBasis(int gens) : n(gens), masks(gens + 1) {
        std::vector<int> idx;
        collect(0, idx);
        for (auto& level : masks)
            for (int i = 0; i < static_cast<int>(level.size()); ++i) index[level[i]] = i;
    }

    void collect(int start, std::vector<int>& idx) {
        std::uint32_t m = 0;
        for (int x : idx) m |= 1u << x;
        masks[idx.size()].push_back(m);
        for (int i = start; i < n; ++i) {
            idx.push_back(i);
            collect(i + 1, idx);
            idx.pop_back();
        }
    }

    // Sign of e^I ∧ e^J relative to e^{I∪J}.
    static int sign(std::uint32_t a, std::uint32_t b) {
        int inv = 0;
        for (std::uint32_t bb = b; bb; bb &= bb - 1) {
            int j = __builtin_ctz(bb);
            inv += __builtin_popcount(a >> (j + 1));
        }
        return inv % 2 ? -1 : 1;
    }
};

}  // namespace

DGA ce_complex(const LieAlgebra& g) {
    Q jac = g.jacobi_residual();
    if (sgn(jac) != 0) throw std::invalid_argument("Jacobi identity fails (residual " + to_string(jac) + ")");
    int n = g.n();
    if (n > 16) throw std::invalid_argument("Chevalley-Eilenberg model limited to 16 generators");
    ExteriorBasis eb(n);

    DGA a;
    a.names.resize(n + 1);
    for (int p = 0; p <= n; ++p)
        for (auto m : eb.masks[p]) {
            std::string s;
            for (int i = 0; i < n; ++i)
                if (m >> i & 1u) s += (s.empty() ? "" : "^") + g.names[i];
            a.names[p].push_back(s.empty() ? "1" : s);
        }
    a.mul.assign(n + 1, std::vector<std::vector<MatQ>>(n + 1));
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q)
            for (auto mi : eb.masks[p]) {
                MatQ m = zeros(a.dim(p + q), a.dim(q));
                for (int j = 0; j < a.dim(q); ++j) {
                    auto mj = eb.masks[q][j];
                    if (mi & mj) continue;
                    m(eb.index.at(mi | mj), j) = ExteriorBasis::sign(mi, mj);
                }
                a.mul[p][q].push_back(std::move(m));
            }
    for (int i = 0; i < n; ++i) {
        a.generator_names.push_back(g.names[i]);
        a.generators.push_back(a.basis(1, eb.index.at(1u << i)));
    }

    a.d.resize(n + 1);
    a.d[0] = zeros(a.dim(1), 1);
    std::vector<Cochain> dgen(n);
    for (int k = 0; k < n; ++k) {
        Cochain c = a.zero(2);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (sgn(g.at(k, i, j)) != 0) c.c[eb.index.at((1u << i) | (1u << j))] -= g.at(k, i, j);
        dgen[k] = c;
    }
    for (int p = 1; p <= n; ++p) {
        a.d[p] = zeros(a.dim(p + 1), a.dim(p));
        for (int col = 0; col < a.dim(p); ++col) {
            std::uint32_t m = eb.masks[p][col];
            int low = __builtin_ctz(m);
            Cochain rest = a.basis(p - 1, eb.index.at(m & (m - 1)));
            Cochain img = a.multiply(dgen[low], rest) - a.multiply(a.generators[low], a.differential(rest));
            for (int row = 0; row < a.dim(p + 1); ++row) a.d[p](row, col) = img.c[row];
        }
    }
    return a;
}

// ---------------------------------------------------------------------------
// Tensor products and morphisms

namespace {

// Basis of (A⊗B)^p: pairs (x, y) ordered by |x|, then x, then y.
struct TensorIndex {
    const DGA& a;
    const DGA& b;
    int top;
    std::vector<std::vector<int>> offset;  // offset[p][|x|]

    TensorIndex(const DGA& x, const DGA& y) : a(x), b(y), top(x.top() + y.top()) {
        offset.assign(top + 1, std::vector<int>(a.top() + 2, 0));
        for (int p = 0; p <= top; ++p)
            for (int s = 0; s <= a.top(); ++s) offset[p][s + 1] = offset[p][s] + a.dim(s) * b.dim(p - s);
    }
    int dim(int p) const { return p < 0 || p > top ? 0 : offset[p][a.top() + 1]; }
    int index(int s, int i, int t, int j) const { return offset[s + t][s] + i * b.dim(t) + j; }
};

}  // namespace

DGA tensor_product(const DGA& a, const DGA& b) {
    TensorIndex ti(a, b);
    DGA out;
    out.names.resize(ti.top + 1);
    for (int p = 0; p <= ti.top; ++p)
        for (int s = 0; s <= a.top(); ++s)
            for (int i = 0; i < a.dim(s); ++i)
                for (int j = 0; j < b.dim(p - s); ++j) {
                    const std::string& x = a.names[s][i];
                    const std::string& y = b.names[p - s][j];
                    out.names[p].push_back(x == "1" ? y : y == "1" ? x : x + "^" + y);
                }

    out.mul.assign(ti.top + 1, std::vector<std::vector<MatQ>>(ti.top + 1));
    for (int p = 0; p <= ti.top; ++p)
        for (int s1 = 0; s1 <= a.top(); ++s1)
            for (int i = 0; i < a.dim(s1); ++i)
                for (int j = 0; j < b.dim(p - s1); ++j) {
                    int t1 = p - s1;
                    for (int q = 0; q <= ti.top; ++q) {
                        MatQ m = zeros(ti.dim(p + q), ti.dim(q));
                        for (int s2 = 0; s2 <= a.top(); ++s2) {
                            int t2 = q - s2;
                            if (t2 < 0 || t2 > b.top() || s1 + s2 > a.top() || t1 + t2 > b.top()) continue;
                            int sign = (t1 * s2) % 2 ? -1 : 1;
                            for (int k = 0; k < a.dim(s2); ++k) {
                                std::vector<Q> xa = a.mul[s1][s2][i].col(k);
                                for (int l = 0; l < b.dim(t2); ++l) {
                                    std::vector<Q> yb = b.mul[t1][t2][j].col(l);
                                    int col = ti.index(s2, k, t2, l);
                                    for (std::size_t u = 0; u < xa.size(); ++u) {
                                        if (sgn(xa[u]) == 0) continue;
                                        for (std::size_t v = 0; v < yb.size(); ++v) {
                                            if (sgn(yb[v]) == 0) continue;
                                            int row = ti.index(s1 + s2, static_cast<int>(u), t1 + t2, static_cast<int>(v));
                                            m(row, col) += Q(sign) * xa[u] * yb[v];
                                        }
                                    }
                                }
                            }
                        }
                        out.mul[p][q].push_back(std::move(m));
                    }
                }

    out.d.resize(ti.top + 1);
    for (int p = 0; p <= ti.top; ++p) {
        out.d[p] = zeros(ti.dim(p + 1), ti.dim(p));
        for (int s = 0; s <= a.top(); ++s)
            for (int i = 0; i < a.dim(s); ++i)
                for (int j = 0; j < b.dim(p - s); ++j) {
                    int t = p - s;
                    int col = ti.index(s, i, t, j);
                    if (s + 1 <= a.top()) {
                        std::vector<Q> dx = a.d[s].col(i);
                        for (std::size_t u = 0; u < dx.size(); ++u)
                            if (sgn(dx[u]) != 0) out.d[p](ti.index(s + 1, static_cast<int>(u), t, j), col) += dx[u];
                    }
                    if (t + 1 <= b.top()) {
                        std::vector<Q> dy = b.d[t].col(j);
                        Q e = s % 2 ? -1 : 1;
                        for (std::size_t v = 0; v < dy.size(); ++v)
                            if (sgn(dy[v]) != 0) out.d[p](ti.index(s, i, t + 1, static_cast<int>(v)), col) += e * dy[v];
                    }
                }
    }

    DgaMorphism left = include_left(a, b);
    DgaMorphism right;
    right.maps.resize(b.top() + 1);
    for (int t = 0; t <= b.top(); ++t) {
        right.maps[t] = zeros(ti.dim(t), b.dim(t));
        for (int j = 0; j < b.dim(t); ++j) right.maps[t](ti.index(0, 0, t, j), j) = 1;
    }
    for (std::size_t g = 0; g < a.generators.size(); ++g) {
        out.generator_names.push_back(a.generator_names[g]);
        out.generators.push_back(left.apply(a.generators[g]));
    }
    for (std::size_t g = 0; g < b.generators.size(); ++g) {
        const std::string& n = b.generator_names[g];
        if (std::find(out.generator_names.begin(), out.generator_names.end(), n) != out.generator_names.end())
            throw std::invalid_argument("generator '" + n + "' appears in both factors");
        out.generator_names.push_back(n);
        out.generators.push_back(right.apply(b.generators[g]));
    }
    return out;
}

Cochain DgaMorphism::apply(const Cochain& a) const {
    Cochain out;
    out.degree = a.degree;
    if (a.degree < 0 || a.degree >= static_cast<int>(maps.size())) return out;
    out.c = maps[a.degree] * a.c;
    return out;
}

DgaMorphism include_left(const DGA& a, const DGA& b) {
    if (b.dim(0) != 1) throw std::invalid_argument("second factor must be connected");
    TensorIndex ti(a, b);
    DgaMorphism f;
    f.maps.resize(a.top() + 1);
    for (int s = 0; s <= a.top(); ++s) {
        f.maps[s] = zeros(ti.dim(s), a.dim(s));
        for (int i = 0; i < a.dim(s); ++i) f.maps[s](ti.index(s, i, 0, 0), i) = 1;
    }
    return f;
}

DgaMorphism project_left(const DGA& a, const DGA& b) {
    if (b.dim(0) != 1) throw std::invalid_argument("second factor must be connected");
    TensorIndex ti(a, b);
    DgaMorphism f;
    f.maps.resize(ti.top + 1);
    for (int p = 0; p <= ti.top; ++p) {
        f.maps[p] = zeros(a.dim(p), ti.dim(p));
        for (int i = 0; i < a.dim(p); ++i) f.maps[p](i, ti.index(p, i, 0, 0)) = 1;
    }
    return f;
}

Report verify_morphism(const DgaMorphism& f, const DGA& from, const DGA& to) {
    Report r;
    r.suite = "dga-morphism";
    Q chain, mult;
    auto track = [](Q& w, const Cochain& c) {
        for (const auto& x : c.c)
            if (abs(x) > w) w = abs(x);
    };
    auto image = [&](const Cochain& x) {
        Cochain y = f.apply(x);
        if (y.c.empty()) y = to.zero(x.degree);
        return y;
    };
    for (int p = 0; p <= from.top(); ++p)
        for (int i = 0; i < from.dim(p); ++i) {
            Cochain x = from.basis(p, i);
            track(chain, image(from.differential(x)) - to.differential(image(x)));
            for (int q = 0; q + p <= from.top(); ++q)
                for (int j = 0; j < from.dim(q); ++j) {
                    Cochain y = from.basis(q, j);
                    track(mult, image(from.multiply(x, y)) - to.multiply(image(x), image(y)));
                }
        }
    r.add_residual("chain-map", "F d = d F", chain);
    r.add_residual("multiplicative", "F(ab) = F(a) F(b)", mult);
    r.add("unit", "F(1) = 1", image(from.unit()) == to.unit(), to.format(image(from.unit())));
    return r;
}

// ---------------------------------------------------------------------------
// Formal 4-manifold models

DGA four_manifold_model(const std::vector<FourManifoldPart>& parts) {
    std::vector<std::string> a1, x2, b3;
    int total2 = 0;
    for (const auto& part : parts) total2 += part.betti[2];
    MatQ q(total2, total2);
    int off = 0;
    for (const auto& part : parts) {
        const auto& b = part.betti;
        if (b[0] != 1 || b[4] != 1) throw std::invalid_argument(part.name + ": b0 and b4 must be 1");
        if (b[1] != b[3]) throw std::invalid_argument(part.name + ": b1 and b3 must agree");
        if (b[1] < 0 || b[2] < 0) throw std::invalid_argument(part.name + ": negative Betti number");
        if (part.form.rows() != b[2] || part.form.cols() != b[2])
            throw std::invalid_argument(part.name + ": intersection form must be b2 x b2");
        if (!(part.form == part.form.transpose())) throw std::invalid_argument(part.name + ": form must be symmetric");
        for (int i = 0; i < b[1]; ++i) {
            a1.push_back(part.name + ".a" + std::to_string(i + 1));
            b3.push_back(part.name + ".b" + std::to_string(i + 1));
        }
        for (int i = 0; i < b[2]; ++i) x2.push_back(part.name + ".x" + std::to_string(i + 1));
        for (int i = 0; i < b[2]; ++i)
            for (int j = 0; j < b[2]; ++j) q(off + i, off + j) = part.form(i, j);
        off += b[2];
    }
    DGA m;
    m.names = {{"1"}, a1, x2, b3, {"vol"}};
    m.d.resize(5);
    for (int p = 0; p <= 4; ++p) m.d[p] = zeros(m.dim(p + 1), m.dim(p));
    m.mul.assign(5, std::vector<std::vector<MatQ>>(5));
    for (int p = 0; p <= 4; ++p)
        for (int i = 0; i < m.dim(p); ++i)
            for (int s = 0; s <= 4; ++s) {
                MatQ t = zeros(m.dim(p + s), m.dim(s));
                for (int j = 0; j < m.dim(s); ++j) {
                    if (p == 0) t(j, j) = 1;
                    else if (s == 0) t(i, 0) = 1;
                    else if (p == 1 && s == 3 && i == j) t(0, j) = 1;
                    else if (p == 3 && s == 1 && i == j) t(0, j) = -1;
                    else if (p == 2 && s == 2) t(0, j) = q(i, j);
                }
                m.mul[p][s].push_back(std::move(t));
            }
    for (int p = 1; p <= 4; ++p)
        for (int i = 0; i < m.dim(p); ++i) {
            m.generator_names.push_back(m.names[p][i]);
            m.generators.push_back(m.basis(p, i));
        }
    return m;
}

// ---------------------------------------------------------------------------
// Cohomology

std::vector<int> CohomologyBasis::betti() const {
    std::vector<int> b;
    for (const auto& r : representatives) b.push_back(r.cols());
    return b;
}

bool CohomologyBasis::is_exact(const Cochain& z) const {
    if (z.is_zero()) return true;
    if (z.degree < 0 || z.degree >= static_cast<int>(boundaries.size())) return false;
    return span_contains(boundaries[z.degree], column_of(z.c));
}

std::vector<Q> CohomologyBasis::class_of(const DGA& a, const Cochain& z) const {
    if (z.degree < 0 || z.degree > a.top()) return {};
    if (!a.differential(z).is_zero()) throw std::invalid_argument("cochain is not closed");
    const MatQ& b = boundaries[z.degree];
    const MatQ& r = representatives[z.degree];
    if (r.cols() == 0) return {};
    auto x = solve(hstack(b, r), column_of(z.c));
    if (!x) throw std::logic_error("cocycle outside boundaries plus representatives");
    std::vector<Q> out(r.cols());
    for (int i = 0; i < r.cols(); ++i) out[i] = (*x)(b.cols() + i, 0);
    return out;
}

Cochain CohomologyBasis::representative(int p, int i) const {
    return Cochain{p, representatives.at(p).col(i)};
}

CohomologyBasis cohomology(const DGA& a) {
    CohomologyBasis h;
    for (int p = 0; p <= a.top(); ++p) {
        int n = a.dim(p);
        MatQ z = a.d[p].rows() == 0 ? MatQ::identity(n) : nullspace(a.d[p]);
        MatQ b = zeros(n, 0);
        if (p > 0 && !a.d[p - 1].is_zero()) b = column_basis(a.d[p - 1]);
        MatQ reps = zeros(n, 0);
        if (z.cols() > 0) {
            MatQ both = hstack(b, z);
            Rref e = rref(both);
            std::vector<int> chosen;
            for (int c : e.pivots)
                if (c >= b.cols()) chosen.push_back(c);
            reps = zeros(n, static_cast<int>(chosen.size()));
            for (std::size_t k = 0; k < chosen.size(); ++k) reps.set_col(static_cast<int>(k), both.col(chosen[k]));
        }
        h.boundaries.push_back(b);
        h.representatives.push_back(reps);
    }
    return h;
}

// ---------------------------------------------------------------------------
// Massey products

namespace {

int h_dim(const CohomologyBasis& h, int p) {
    return p < 0 || p >= static_cast<int>(h.representatives.size()) ? 0 : h.representatives[p].cols();
}

Cochain primitive(const DGA& a, const CohomologyBasis& h, const Cochain& x, const std::string& what,
                  RationalRng* rng) {
    int p = x.degree - 1;
    if (x.is_zero() && a.dim(p) == 0) return a.zero(p);
    if (a.dim(p) == 0) throw MasseyUndefined(what + " is nonzero in degree " + std::to_string(x.degree));
    auto sol = solve(a.d[p], column_of(x.c));
    if (!sol) {
        std::vector<Q> cls = h.class_of(a, x);
        throw MasseyUndefined(what + " is not exact: class " + join_ints(cls) + " in H^" + std::to_string(x.degree));
    }
    Cochain f{p, sol->col(0)};
    if (rng) {
        MatQ z = a.d[p].rows() == 0 ? MatQ::identity(a.dim(p)) : nullspace(a.d[p]);
        for (int i = 0; i < z.cols(); ++i) {
            Q s = rng->rational();
            for (int k = 0; k < a.dim(p); ++k) f.c[k] += s * z(k, i);
        }
    }
    return f;
}

}  // namespace

MasseyResult massey_triple(const DGA& a, const CohomologyBasis& h, const Cochain& x, const Cochain& y,
                           const Cochain& z, RationalRng* rng) {
    int n = 1;
    for (const Cochain* c : {&x, &y, &z}) {
        if (c->degree < 0 || c->degree > a.top() || static_cast<int>(c->c.size()) != a.dim(c->degree))
            throw MasseyUndefined("class " + std::to_string(n) + " has an invalid degree");
        if (!a.differential(*c).is_zero()) throw MasseyUndefined("class " + std::to_string(n) + " is not closed");
        ++n;
    }
    MasseyResult m;
    m.p = x.degree;
    m.q = y.degree;
    m.r = z.degree;
    m.a = x;
    m.b = y;
    m.c = z;
    m.f = primitive(a, h, a.multiply(x, y), "[a][b]", rng);
    m.g = primitive(a, h, a.multiply(y, z), "[b][c]", rng);
    Q sign = m.p % 2 ? -1 : 1;
    m.representative = a.multiply(m.f, z) - sign * a.multiply(x, m.g);
    int deg = m.p + m.q + m.r - 1;
    if (m.representative.c.empty()) m.representative = a.zero(deg);
    m.rep_class = h.class_of(a, m.representative);

    MatQ gens = zeros(h_dim(h, deg), 0);
    auto add_products = [&](int s, int t) {
        for (int i = 0; i < h_dim(h, s); ++i)
            for (int j = 0; j < h_dim(h, t); ++j) {
                Cochain prod = a.multiply(h.representative(s, i), h.representative(t, j));
                gens = hstack(gens, column_of(h.class_of(a, prod)));
            }
    };
    if (h_dim(h, deg) > 0) {
        add_products(m.p + m.q - 1, m.r);
        add_products(m.p, m.q + m.r - 1);
    }
    m.indeterminacy = gens.is_zero() ? zeros(h_dim(h, deg), 0) : column_basis(gens);
    m.vanishes = m.rep_class.empty() || span_contains(m.indeterminacy, column_of(m.rep_class));
    return m;
}

bool in_indeterminacy(const DGA& a, const CohomologyBasis& h, const MasseyResult& m, const Cochain& u) {
    std::vector<Q> cls = h.class_of(a, u);
    return cls.empty() || span_contains(m.indeterminacy, column_of(cls));
}

MasseyStability massey_stability(const DGA& a, const CohomologyBasis& h, const Cochain& x, const Cochain& y,
                                 const Cochain& z, RationalRng& rng, int trials) {
    MasseyResult base = massey_triple(a, h, x, y, z);
    MasseyStability s;
    for (int t = 0; t < trials; ++t) {
        MasseyResult m = massey_triple(a, h, x, y, z, &rng);
        ++s.trials;
        if (m.vanishes != base.vanishes) ++s.flips;
        if (!in_indeterminacy(a, h, base, m.representative - base.representative)) ++s.class_moves;
    }
    return s;
}

std::vector<MasseyResult> massey_sweep(const DGA& a, const CohomologyBasis& h, int p, int q, int r) {
    std::vector<MasseyResult> out;
    for (int i = 0; i < h_dim(h, p); ++i)
        for (int j = 0; j < h_dim(h, q); ++j)
            for (int k = 0; k < h_dim(h, r); ++k) {
                try {
                    out.push_back(
                        massey_triple(a, h, h.representative(p, i), h.representative(q, j), h.representative(r, k)));
                } catch (const MasseyUndefined&) {
                }
            }
    return out;
}

VanishingVerdict almost_formal_vanishing(int p, int q, int r, int k, bool full_holonomy) {
    if (p < 0 || q < 0 || r < 0) throw std::invalid_argument("degrees must be nonnegative");
    std::string ks = std::to_string(k);
    if (!full_holonomy) {
        if (p + q != k && q + r != k)
            return {true, "|a|+|b| != " + ks + " and |b|+|c| != " + ks};
        return {false, "|a|+|b| or |b|+|c| equals " + ks};
    }
    if (p <= 1 || q <= 1 || r <= 1) return {true, "a class of degree 0 or 1 forces vanishing when b1 = 0"};
    if (p + q + r - 1 > 7) return {true, "lands above degree 7"};
    if (p + q != k && q + r != k) return {true, "|a|+|b| != " + ks + " and |b|+|c| != " + ks};
    if (p == 2 && q == 2 && r == 2) return {false, "degrees (2,2,2) are not covered"};
    if (p + q + r - 1 == 6) return {true, "lands in H^6 = 0 since b6 = b1 = 0"};
    return {true, "H^3 . H^4 = H^7 leaves a zero quotient"};
}

std::vector<int> kunneth_betti(const std::vector<int>& bw, const std::vector<int>& bl) {
    if (bw.empty() || bl.empty()) throw std::invalid_argument("empty Betti vector");
    std::vector<int> out(bw.size() + bl.size() - 1, 0);
    for (std::size_t i = 0; i < bw.size(); ++i)
        for (std::size_t j = 0; j < bl.size(); ++j) out[i + j] += bw[i] * bl[j];
    return out;
}

std::vector<int> connected_sum_betti(const std::vector<int>& bm, const std::vector<int>& bn) {
    if (bm.size() != bn.size() || bm.size() < 2) throw std::invalid_argument("connected sum needs equal dimensions");
    std::vector<int> out(bm.size());
    out.front() = 1;
    out.back() = 1;
    for (std::size_t k = 1; k + 1 < bm.size(); ++k) out[k] = bm[k] + bn[k];
    return out;
}

// ---------------------------------------------------------------------------
// Quadratic forms

Inertia inertia(const MatQ& symmetric) {
    if (!(symmetric == symmetric.transpose())) throw std::invalid_argument("form is not symmetric");
    MatQ a = symmetric;
    int n = a.rows();
    Inertia in;
    std::vector<bool> done(n, false);
    for (int step = 0; step < n; ++step) {
        int piv = -1;
        for (int i = 0; i < n && piv < 0; ++i)
            if (!done[i] && sgn(a(i, i)) != 0) piv = i;
        if (piv < 0) {
            // Make a diagonal entry nonzero by the congruence e_i ↦ e_i + e_j.
            int pi = -1, pj = -1;
            for (int i = 0; i < n && pi < 0; ++i)
                for (int j = 0; j < n; ++j)
                    if (!done[i] && !done[j] && i != j && sgn(a(i, j)) != 0) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi < 0) break;
            for (int k = 0; k < n; ++k) a(pi, k) += a(pj, k);
            for (int k = 0; k < n; ++k) a(k, pi) += a(k, pj);
            piv = pi;
        }
        done[piv] = true;
        Q d = a(piv, piv);
        (sgn(d) > 0 ? in.positive : in.negative)++;
        for (int i = 0; i < n; ++i) {
            if (done[i] || sgn(a(i, piv)) == 0) continue;
            Q f = a(i, piv) / d;
            for (int k = 0; k < n; ++k) a(i, k) -= f * a(piv, k);
        }
        for (int i = 0; i < n; ++i) {
            if (done[i] || i == piv) continue;
            a(piv, i) = 0;
        }
        for (int i = 0; i < n; ++i) {
            if (done[i]) continue;
            for (int k = 0; k < n; ++k)
                if (!done[k]) a(k, i) = a(i, k);
        }
    }
    in.zero = n - in.positive - in.negative;
    return in;
}

bool is_even_form(const MatQ& q) {
    for (int i = 0; i < q.rows(); ++i) {
        const Q& x = q(i, i);
        if (x.get_den() != 1 || x.get_num() % 2 != 0) return false;
    }
    for (int i = 0; i < q.rows(); ++i)
        for (int j = 0; j < q.cols(); ++j)
            if (q(i, j).get_den() != 1) return false;
    return true;
}

MatQ e8_form() {
    MatQ m(8, 8);
    for (int i = 0; i < 8; ++i) m(i, i) = 2;
    auto edge = [&](int i, int j) { m(i, j) = m(j, i) = -1; };
    for (int i = 0; i < 6; ++i) edge(i, i + 1);
    edge(4, 7);
    return m;
}

MatQ hyperbolic_form() {
    MatQ m(2, 2);
    m(0, 1) = m(1, 0) = 1;
    return m;
}

MatQ form_from_blocks(const std::vector<std::string>& blocks) {
    std::vector<MatQ> parts;
    for (const auto& b : blocks) {
        if (b == "E8") parts.push_back(e8_form());
        else if (b == "-E8") parts.push_back(Q(-1) * e8_form());
        else if (b == "H") parts.push_back(hyperbolic_form());
        else if (b.size() > 2 && b.front() == '<' && b.back() == '>') {
            MatQ m(1, 1);
            m(0, 0) = parse_rational(b.substr(1, b.size() - 2));
            parts.push_back(m);
        } else {
            throw std::invalid_argument("unknown form block '" + b + "'");
        }
    }
    int n = 0;
    for (const auto& p : parts) n += p.rows();
    MatQ out(n, n);
    int off = 0;
    for (const auto& p : parts) {
        for (int i = 0; i < p.rows(); ++i)
            for (int j = 0; j < p.cols(); ++j) out(off + i, off + j) = p(i, j);
        off += p.rows();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Obstructions

ObstructionReport obstruction_check(const ObstructionInput& in) {
    ObstructionReport rep;
    rep.name = in.name;
    if (in.l_parts.empty()) throw std::invalid_argument("the 4-manifold factor needs at least one part");

    DGA w = ce_complex(in.w);
    CohomologyBasis hw = cohomology(w);
    rep.betti_W = hw.betti();

    std::vector<int> bl(in.l_parts.front().betti.begin(), in.l_parts.front().betti.end());
    for (std::size_t i = 1; i < in.l_parts.size(); ++i)
        bl = connected_sum_betti(bl, std::vector<int>(in.l_parts[i].betti.begin(), in.l_parts[i].betti.end()));
    DGA l = four_manifold_model(in.l_parts);
    rep.betti_L = cohomology(l).betti();
    if (rep.betti_L != bl) throw std::logic_error("4-manifold model disagrees with the connected-sum Betti numbers");

    MatQ q;
    {
        int n = 0;
        for (const auto& p : in.l_parts) n += p.betti[2];
        q = MatQ(n, n);
        int off = 0;
        for (const auto& p : in.l_parts) {
            for (int i = 0; i < p.betti[2]; ++i)
                for (int j = 0; j < p.betti[2]; ++j) q(off + i, off + j) = p.form(i, j);
            off += p.betti[2];
        }
    }
    rep.signature_L = inertia(q).signature();
    rep.even_L = is_even_form(q);

    DGA m = tensor_product(w, l);
    CohomologyBasis hm = cohomology(m);
    rep.betti_M = hm.betti();
    std::vector<int> kb = kunneth_betti(rep.betti_W, rep.betti_L);
    if (kb != rep.betti_M) throw std::logic_error("Kunneth formula disagrees with the product model");

    const auto& b = rep.betti_M;
    auto add = [&](std::string id, std::string stmt, bool pass, std::string value) {
        rep.classical.push_back({std::move(id), std::move(stmt), pass, std::move(value)});
    };
    add("b3-ge-b1-plus-b0", "b3 >= b1 + b0", b[3] >= b[1] + b[0],
        std::to_string(b[3]) + " >= " + std::to_string(b[1] + b[0]));
    add("b2-ge-b1", "b2 >= b1", b[2] >= b[1], std::to_string(b[2]) + " >= " + std::to_string(b[1]));
    add("b1-in-0137", "b1 in {0,1,3,7}", b[1] == 0 || b[1] == 1 || b[1] == 3 || b[1] == 7, std::to_string(b[1]));
    add("p1-nonzero", "p1(M) != 0 unless the metric is flat (sigma(L) != 0, or b1 = 7)",
        rep.signature_L != 0 || b[1] == 7, "sigma(L) = " + std::to_string(rep.signature_L) + ", b1 = " + std::to_string(b[1]));
    add("w2-zero", "w2(M) = 0 (W is a 3-manifold and Q_L is even)", rep.even_L, rep.even_L ? "even" : "odd");

    DgaMorphism pi = include_left(w, l);
    for (const auto& cls : in.massey) {
        MasseyEvidence ev;
        ev.classes = cls;
        Cochain x = w.parse(cls[0]), y = w.parse(cls[1]), z = w.parse(cls[2]);
        ev.degrees = {x.degree, y.degree, z.degree};
        ev.filter = almost_formal_vanishing(x.degree, y.degree, z.degree, 4);
        try {
            MasseyResult mw = massey_triple(w, hw, x, y, z);
            MasseyResult mm = massey_triple(m, hm, pi.apply(x), pi.apply(y), pi.apply(z));
            ev.defined = true;
            ev.vanishes_on_W = mw.vanishes;
            ev.vanishes_on_M = mm.vanishes;
            ev.naturality = in_indeterminacy(m, hm, mm, mm.representative - pi.apply(mw.representative));
            ev.obstructs = !mm.vanishes && ev.filter.guaranteed;
        } catch (const MasseyUndefined& e) {
            ev.error = e.what();
        }
        rep.massey.push_back(ev);
    }

    rep.obstructed = std::any_of(rep.classical.begin(), rep.classical.end(), [](const Check& c) { return !c.pass; }) ||
                     std::any_of(rep.massey.begin(), rep.massey.end(), [](const MasseyEvidence& e) { return e.obstructs; });
    rep.verdict = rep.obstructed ? "NO" : "COMPATIBLE";
    return rep;
}

}  // namespace g2calc
