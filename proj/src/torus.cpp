#include "g2calc/torus.hpp"

#include "g2calc/g2.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace g2calc {

namespace {

int dim(int j) { return binomial(kDim, j); }

bool in_range(int j) { return j >= 0 && j <= kDim; }

MatQI zero_block(int from, int to) { return MatQI(dim(to), dim(from)); }

void track(Q& worst, const Q& v) {
    if (v > worst) worst = v;
}

// Real factor of a purely real or purely imaginary matrix, keeping empty shapes.
MatQ factor(const MatQI& a) {
    if (a.rows() == 0 || a.cols() == 0) return MatQ(a.rows(), a.cols());
    return real_factor(a);
}

}  // namespace

// ---------------------------------------------------------------------------
// Modes

std::string mode_string(const Mode& k) {
    std::string s;
    for (int i = 0; i < kDim; ++i) {
        if (i) s += ',';
        s += std::to_string(k[i]);
    }
    return s;
}

Mode parse_mode(const std::string& text) {
    Mode k{};
    std::stringstream ss(text);
    std::string item;
    int n = 0;
    while (std::getline(ss, item, ',')) {
        if (n == kDim) throw std::invalid_argument("mode has more than 7 entries: '" + text + "'");
        std::size_t pos = 0;
        try {
            k[n] = std::stoi(item, &pos);
        } catch (const std::exception&) {
            pos = std::string::npos;
        }
        if (pos != item.size()) throw std::invalid_argument("malformed mode entry '" + item + "'");
        ++n;
    }
    if (n != kDim) throw std::invalid_argument("mode needs 7 comma-separated integers: '" + text + "'");
    return k;
}

Q norm2(const Mode& k) {
    Q s;
    for (int x : k) s += Q(x * x);
    return s;
}

bool is_zero_mode(const Mode& k) {
    return std::all_of(k.begin(), k.end(), [](int x) { return x == 0; });
}

Vector mode_vector(const Mode& k) {
    Vector v;
    for (int i = 0; i < kDim; ++i) v[i] = k[i];
    return v;
}

// ---------------------------------------------------------------------------
// Graded operators

GradedOp GradedOp::zero(int shift) {
    GradedOp a;
    a.shift = shift;
    for (int j = 0; j <= kDim; ++j) a.block[j] = zero_block(j, j + shift);
    return a;
}

GradedOp GradedOp::from_real(int shift, const std::array<MatQ, kDim + 1>& blocks) {
    GradedOp a;
    a.shift = shift;
    for (int j = 0; j <= kDim; ++j) a.block[j] = MatQI::real(blocks[j]);
    return a;
}

bool GradedOp::is_zero() const {
    return std::all_of(block.begin(), block.end(), [](const MatQI& m) { return m.is_zero(); });
}

GradedOp GradedOp::adjoint() const {
    GradedOp a;
    a.shift = -shift;
    for (int j = 0; j <= kDim; ++j)
        a.block[j] = in_range(j - shift) ? block[j - shift].adjoint() : zero_block(j, j - shift);
    return a;
}

Q GradedOp::max_residual() const {
    Q m;
    for (const auto& b : block) track(m, max_abs(b));
    return m;
}

MatQI GradedOp::dense() const {
    int offset[kDim + 2] = {0};
    for (int j = 0; j <= kDim; ++j) offset[j + 1] = offset[j] + dim(j);
    MatQI m(offset[kDim + 1], offset[kDim + 1]);
    for (int j = 0; j <= kDim; ++j) {
        if (!in_range(j + shift)) continue;
        const MatQI& b = block[j];
        for (int r = 0; r < b.rows(); ++r)
            for (int c = 0; c < b.cols(); ++c) m.set(offset[j + shift] + r, offset[j] + c, b.at(r, c));
    }
    return m;
}

GradedOp operator+(const GradedOp& a, const GradedOp& b) {
    if (a.shift != b.shift) throw std::invalid_argument("graded operators of different shift");
    GradedOp c;
    c.shift = a.shift;
    for (int j = 0; j <= kDim; ++j) c.block[j] = a.block[j] + b.block[j];
    return c;
}

GradedOp operator-(const GradedOp& a, const GradedOp& b) { return a + QI(-1) * b; }

GradedOp operator*(const GradedOp& a, const GradedOp& b) {
    GradedOp c;
    c.shift = a.shift + b.shift;
    for (int j = 0; j <= kDim; ++j) {
        int mid = j + b.shift;
        c.block[j] = in_range(mid) ? a.block[mid] * b.block[j] : zero_block(j, j + c.shift);
    }
    return c;
}

GradedOp operator*(const QI& s, const GradedOp& a) {
    GradedOp c = a;
    for (auto& b : c.block) b = s * b;
    return c;
}

GradedOp star_conjugate(const GradedOp& a, int (*sign_exponent)(int)) {
    GradedOp c;
    c.shift = -a.shift;
    for (int j = 0; j <= kDim; ++j) {
        int mid = kDim - j + a.shift;
        if (!in_range(mid)) {
            c.block[j] = zero_block(j, j - a.shift);
            continue;
        }
        MatQ s_in = star_matrix(j), s_out = star_matrix(mid);
        const MatQI& b = a.block[kDim - j];
        MatQI m(s_out * (b.re * s_in), s_out * (b.im * s_in));
        c.block[j] = (sign_exponent(j) % 2) ? QI(-1) * m : m;
    }
    return c;
}

GradedOp wedge_op(const Form& w) {
    std::array<MatQ, kDim + 1> b;
    for (int j = 0; j <= kDim; ++j) b[j] = wedge_matrix(w, j);
    return GradedOp::from_real(w.degree(), b);
}

GradedOp iota_op(const VectorValuedForm& k) {
    std::array<MatQ, kDim + 1> b;
    for (int j = 0; j <= kDim; ++j) b[j] = iota_matrix(k, j);
    return GradedOp::from_real(k.rank - 1, b);
}

// ---------------------------------------------------------------------------
// Mode tables

namespace {

constexpr const char* kOpNames[] = {"d", "ds", "laplacian", "iota_B", "iota_K", "L_B", "L_K", "L_B*", "L_K*"};

struct RefInfo {
    const char* name;
    int degree;
    int l;
    int m;
};

constexpr RefInfo kRefs[] = {
    {"1_7", 0, 1, 7},    {"7_1", 2, 7, 1},     {"7_7", 1, 7, 7},     {"7_14", 1, 7, 14},   {"7_27", 2, 7, 27},
    {"14_7", 2, 14, 7},  {"14_27", 2, 14, 27}, {"27_7", 3, 27, 7},  {"27_27", 3, 27, 27}, {"27_14", 4, 27, 14},
};

const RefInfo& ref_info(const std::string& name) {
    for (const auto& r : kRefs)
        if (name == r.name) return r;
    throw std::invalid_argument("unknown reference operator D^" + name);
}

std::string ref_name(int l, int m) { return std::to_string(l) + "_" + std::to_string(m); }

bool has_ref(int l, int m) {
    std::string n = ref_name(l, m);
    for (const auto& r : kRefs)
        if (n == r.name) return true;
    return false;
}

}  // namespace

std::string mode_op_name(ModeOp op) { return kOpNames[static_cast<int>(op)]; }

ModeOp parse_mode_op(const std::string& name) {
    for (int i = 0; i < 9; ++i)
        if (name == kOpNames[i]) return static_cast<ModeOp>(i);
    throw std::invalid_argument("unknown operator '" + name + "'");
}

const std::vector<std::string>& d_reference_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& r : kRefs) v.emplace_back(r.name);
        return v;
    }();
    return names;
}

int d_reference_degree(const std::string& name) { return ref_info(name).degree; }

const GradedOp& ModeOperatorTable::op(ModeOp which) const {
    switch (which) {
    case ModeOp::D: return d;
    case ModeOp::Ds: return ds;
    case ModeOp::Laplacian: return lap;
    case ModeOp::IotaB: return iB;
    case ModeOp::IotaK: return iK;
    case ModeOp::LB: return LB;
    case ModeOp::LK: return LK;
    case ModeOp::LBs: return LBs;
    case ModeOp::LKs: break;
    }
    return LKs;
}

const MatQI& ModeOperatorTable::ref(const std::string& name) const {
    auto it = D.find(name);
    if (it == D.end()) throw std::invalid_argument("unknown reference operator D^" + name);
    return it->second;
}

ModeOperatorTable build_mode_table(const Mode& k) {
    static const GradedOp ib = iota_op(cross_product_B());
    static const GradedOp ik = iota_op(associator_K());
    ModeOperatorTable t;
    t.k = k;
    Form kf = flat(mode_vector(k));
    t.d.shift = 1;
    for (int j = 0; j <= kDim; ++j) t.d.block[j] = MatQI::imag(wedge_matrix(kf, j));
    t.ds = t.d.adjoint();
    t.lap = t.d * t.ds + t.ds * t.d;
    t.iB = ib;
    t.iK = ik;
    t.LB = t.iB * t.d + t.d * t.iB;
    t.LK = t.iK * t.d - t.d * t.iK;
    t.LBs = t.LB.adjoint();
    t.LKs = t.LK.adjoint();
    for (const auto& r : kRefs)
        t.D[r.name] = parameter_component(t.d.block[r.degree], {r.degree, r.l}, {r.degree + 1, r.m});
    return t;
}

// ---------------------------------------------------------------------------
// Spectral forms

bool SpectralForm::is_zero() const {
    return std::all_of(terms.begin(), terms.end(), [](const auto& t) { return t.second.is_zero(); });
}

bool operator==(const SpectralForm& a, const SpectralForm& b) {
    if (a.degree != b.degree) return false;
    auto covered = [](const SpectralForm& x, const SpectralForm& y) {
        for (const auto& [k, f] : x.terms) {
            auto it = y.terms.find(k);
            if (it == y.terms.end() ? !f.is_zero() : !(it->second == f)) return false;
        }
        return true;
    };
    return covered(a, b) && covered(b, a);
}

namespace {

CForm apply_block(const MatQI& m, int out_degree, const CForm& a) {
    CForm out(out_degree);
    if (out.size() == 0) return out;
    out.coefficients() = m * a.coefficients();
    return out;
}

template <class F>
SpectralForm map_modes(int out_degree, const SpectralForm& a, F&& f) {
    SpectralForm out;
    out.degree = out_degree;
    for (const auto& [k, form] : a.terms) {
        if (form.degree() != a.degree) throw std::invalid_argument("spectral form has mixed degrees");
        CForm v = f(k, form);
        if (!v.is_zero()) out.terms.emplace(k, std::move(v));
    }
    return out;
}

MatQI projector_matrix(TypeLabel t) { return MatQI::real(Decomposition::instance().projector(t)); }

}  // namespace

SpectralForm apply(ModeOp op, const SpectralForm& a) {
    static const int shifts[] = {1, -1, 0, 1, 2, 2, 3, -2, -3};
    int shift = shifts[static_cast<int>(op)];
    return map_modes(a.degree + shift, a, [&](const Mode& k, const CForm& f) {
        ModeOperatorTable t = build_mode_table(k);
        const GradedOp& g = t.op(op);
        return in_range(a.degree) ? apply_block(g.block[a.degree], a.degree + shift, f) : CForm(a.degree + shift);
    });
}

SpectralForm apply_d_component(int l, int m, const SpectralForm& a) {
    TypeLabel from{a.degree, l}, to{a.degree + 1, m};
    if (!valid_label(from) || !valid_label(to))
        throw std::invalid_argument("no component of d from " + from.str() + " to " + to.str());
    MatQI pf = projector_matrix(from), pt = projector_matrix(to);
    return map_modes(a.degree + 1, a, [&](const Mode& k, const CForm& f) {
        MatQI dk = MatQI::imag(wedge_matrix(flat(mode_vector(k)), a.degree));
        return apply_block(pt * (dk * pf), a.degree + 1, f);
    });
}

SpectralForm apply_projection(TypeLabel t, const SpectralForm& a) {
    if (!valid_label(t) || t.k != a.degree) throw std::invalid_argument("no projection onto " + t.str());
    MatQI p = projector_matrix(t);
    return map_modes(a.degree, a, [&](const Mode&, const CForm& f) { return apply_block(p, a.degree, f); });
}

// ---------------------------------------------------------------------------
// Component diagrams

std::string component_op_name(ComponentOp op) {
    switch (op) {
    case ComponentOp::D: return "d";
    case ComponentOp::LB: return "L_B";
    case ComponentOp::LK: break;
    }
    return "L_K";
}

int component_shift(ComponentOp op) {
    switch (op) {
    case ComponentOp::D: return 1;
    case ComponentOp::LB: return 2;
    case ComponentOp::LK: break;
    }
    return 3;
}

const std::vector<Arrow>& component_figure(ComponentOp op) {
    static const std::vector<Arrow> d{
        {{0, 1}, {1, 7}, 1, "1_7"},           {{1, 7}, {2, 7}, 1, "7_7"},
        {{1, 7}, {2, 14}, 1, "7_14"},         {{2, 7}, {3, 1}, 1, "7_1"},
        {{2, 7}, {3, 7}, Q(-3, 2), "7_7"},    {{2, 7}, {3, 27}, 1, "7_27"},
        {{2, 14}, {3, 7}, 1, "14_7"},         {{2, 14}, {3, 27}, 1, "14_27"},
        {{3, 1}, {4, 7}, -1, "1_7"},          {{3, 7}, {4, 1}, Q(4, 3), "7_1"},
        {{3, 7}, {4, 7}, Q(-3, 2), "7_7"},    {{3, 7}, {4, 27}, -1, "7_27"},
        {{3, 27}, {4, 7}, 1, "27_7"},         {{3, 27}, {4, 27}, 1, "27_27"},
        {{4, 1}, {5, 7}, 1, "1_7"},           {{4, 7}, {5, 7}, 2, "7_7"},
        {{4, 7}, {5, 14}, -1, "7_14"},        {{4, 27}, {5, 7}, Q(4, 3), "27_7"},
        {{4, 27}, {5, 14}, 1, "27_14"},       {{5, 7}, {6, 7}, 3, "7_7"},
        {{5, 14}, {6, 7}, 4, "14_7"},         {{6, 7}, {7, 1}, Q(7, 3), "7_1"},
    };
    static const std::vector<Arrow> lb{
        {{0, 1}, {2, 7}, 1, "1_7"},          {{2, 7}, {4, 1}, -2, "7_1"},      {{2, 7}, {4, 27}, -2, "7_27"},
        {{2, 14}, {4, 7}, -3, "14_7"},       {{2, 14}, {4, 27}, 1, "14_27"},   {{4, 1}, {6, 7}, 3, "1_7"},
        {{4, 7}, {6, 7}, -6, "7_7"},         {{4, 27}, {6, 7}, 4, "27_7"},     {{1, 7}, {3, 1}, 1, "7_1"},
        {{1, 7}, {3, 7}, Q(3, 2), "7_7"},    {{1, 7}, {3, 27}, 1, "7_27"},     {{3, 1}, {5, 7}, -2, "1_7"},
        {{3, 7}, {5, 14}, 3, "7_14"},        {{3, 27}, {5, 7}, Q(-8, 3), "27_7"},
        {{3, 27}, {5, 14}, 1, "27_14"},      {{5, 7}, {7, 1}, 7, "7_1"},
    };
    static const std::vector<Arrow> lk{
        {{0, 1}, {3, 7}, -1, "1_7"},     {{3, 1}, {6, 7}, -4, "1_7"},        {{3, 7}, {6, 7}, 6, "7_7"},
        {{3, 27}, {6, 7}, 4, "27_7"},    {{1, 7}, {4, 1}, Q(4, 3), "7_1"},   {{1, 7}, {4, 7}, Q(3, 2), "7_7"},
        {{1, 7}, {4, 27}, -1, "7_27"},   {{4, 7}, {7, 1}, Q(-28, 3), "7_1"}, {{2, 7}, {5, 14}, 3, "7_14"},
        {{2, 14}, {5, 7}, -4, "14_7"},
    };
    switch (op) {
    case ComponentOp::D: return d;
    case ComponentOp::LB: return lb;
    case ComponentOp::LK: break;
    }
    return lk;
}

std::vector<std::pair<TypeLabel, TypeLabel>> component_slots(ComponentOp op) {
    int shift = component_shift(op);
    std::vector<std::pair<TypeLabel, TypeLabel>> out;
    for (TypeLabel from : all_labels())
        for (TypeLabel to : labels_in_degree(from.k + shift)) out.emplace_back(from, to);
    return out;
}

ProbeResult probe_component(const ModeOperatorTable& t, ComponentOp op, TypeLabel from, TypeLabel to) {
    int shift = component_shift(op);
    if (!valid_label(from) || !valid_label(to) || to.k != from.k + shift)
        throw std::invalid_argument("no " + component_op_name(op) + " slot " + from.str() + " -> " + to.str());
    const GradedOp& g = op == ComponentOp::D ? t.d : op == ComponentOp::LB ? t.LB : t.LK;
    MatQI comp = parameter_component(g.block[from.k], from, to);
    MatQI reference;
    if (has_ref(from.l, to.l)) reference = t.ref(ref_name(from.l, to.l));
    return probe_ratio(comp, reference);
}

ProbeResult probe_d_constant(TypeLabel from, TypeLabel to, const Mode& k) {
    return probe_component(build_mode_table(k), ComponentOp::D, from, to);
}

// ---------------------------------------------------------------------------
// Mode samples

std::vector<Mode> sample_modes(RationalRng& rng, int count, bool include_zero) {
    std::vector<Mode> fixed;
    if (include_zero) fixed.push_back(Mode{});
    for (int i = 0; i < kDim; ++i) {
        Mode e{};
        e[i] = 1;
        fixed.push_back(e);
    }
    fixed.push_back({2, 0, 0, 0, 0, 0, 0});
    fixed.push_back({1, 1, 0, 0, 0, 0, 0});
    fixed.push_back({0, 0, 1, 0, 0, 0, -1});
    fixed.push_back({1, 1, 1, 1, 1, 1, 1});
    fixed.push_back({1, -1, 1, -1, 1, -1, 1});
    fixed.push_back({3, 0, -2, 0, 0, 1, 0});
    std::vector<Mode> out;
    for (const auto& m : fixed) {
        if (static_cast<int>(out.size()) == count) return out;
        out.push_back(m);
    }
    while (static_cast<int>(out.size()) < count) {
        Mode k{};
        long zeros = rng.integer(0, 5);
        for (int i = 0; i < kDim; ++i) k[i] = static_cast<int>(rng.integer(-3, 3));
        for (long z = 0; z < zeros; ++z) k[rng.integer(0, kDim - 1)] = 0;
        if (!is_zero_mode(k)) out.push_back(k);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Verification

Report verify_component_figures(const std::vector<Mode>& modes) {
    Report r;
    r.suite = "component-figures";
    std::vector<ModeOperatorTable> tables;
    for (const auto& k : modes)
        if (!is_zero_mode(k)) tables.push_back(build_mode_table(k));
    for (ComponentOp op : {ComponentOp::D, ComponentOp::LB, ComponentOp::LK}) {
        const auto& fig = component_figure(op);
        for (auto [from, to] : component_slots(op)) {
            std::optional<Q> expected;
            std::string ref;
            for (const auto& a : fig)
                if (a.from == from && a.to == to) {
                    expected = a.c;
                    ref = a.reference;
                }
            bool pass = !tables.empty();
            std::string value = "no nonzero modes";
            for (const auto& t : tables) {
                ProbeResult got = probe_component(t, op, from, to);
                if (value == "no nonzero modes" || !got.matches(expected)) value = got.str();
                if (!got.matches(expected)) {
                    pass = false;
                    value += " at mode " + mode_string(t.k);
                    break;
                }
            }
            std::string id = component_op_name(op) + ":" + from.str() + "->" + to.str();
            std::string stmt = expected ? "component is " + to_string(*expected) + " D^" + ref : "component vanishes";
            r.add(id, stmt + " on " + std::to_string(tables.size()) + " modes", pass, value);
        }
    }
    return r;
}

namespace {

struct Term {
    Q c;
    const char* a;  // applied second
    const char* b;  // applied first
};

struct Relation {
    const char* id;
    const char* statement;
    std::vector<Term> terms;
};

const std::vector<Relation>& relations() {
    static const std::vector<Relation> rel{
        {"rel-01", "D^7_7 D^1_7 = 0", {{1, "7_7", "1_7"}}},
        {"rel-02", "D^7_14 D^1_7 = 0", {{1, "7_14", "1_7"}}},
        {"rel-03", "D^7_1 D^7_7 = 0", {{1, "7_1", "7_7"}}},
        {"rel-04", "3/2 D^7_7 D^7_7 - D^14_7 D^7_14 = 0", {{Q(3, 2), "7_7", "7_7"}, {-1, "14_7", "7_14"}}},
        {"rel-05",
         "-D^1_7 D^7_1 + 9/4 D^7_7 D^7_7 + D^27_7 D^7_27 = 0",
         {{-1, "1_7", "7_1"}, {Q(9, 4), "7_7", "7_7"}, {1, "27_7", "7_27"}}},
        {"rel-06", "3/2 D^7_14 D^7_7 - D^27_14 D^7_27 = 0", {{Q(3, 2), "7_14", "7_7"}, {-1, "27_14", "7_27"}}},
        {"rel-07", "3/2 D^7_27 D^7_7 + D^27_27 D^7_27 = 0", {{Q(3, 2), "7_27", "7_7"}, {1, "27_27", "7_27"}}},
        {"rel-08", "D^7_27 D^7_7 + D^14_27 D^7_14 = 0", {{1, "7_27", "7_7"}, {1, "14_27", "7_14"}}},
        {"rel-09", "D^7_1 D^14_7 = 0", {{1, "7_1", "14_7"}}},
        {"rel-10", "3/2 D^7_7 D^14_7 - D^27_7 D^14_27 = 0", {{Q(3, 2), "7_7", "14_7"}, {-1, "27_7", "14_27"}}},
        {"rel-11", "D^7_27 D^14_7 - D^27_27 D^14_27 = 0", {{1, "7_27", "14_7"}, {-1, "27_27", "14_27"}}},
        {"rel-12", "D^7_7 D^27_7 + D^14_7 D^27_14 = 0", {{1, "7_7", "27_7"}, {1, "14_7", "27_14"}}},
        {"rel-13", "3/2 D^7_7 D^27_7 + D^27_7 D^27_27 = 0", {{Q(3, 2), "7_7", "27_7"}, {1, "27_7", "27_27"}}},
        {"rel-14", "D^7_14 D^27_7 - D^27_14 D^27_27 = 0", {{1, "7_14", "27_7"}, {-1, "27_14", "27_27"}}},
    };
    return rel;
}

MatQI combine(const ModeOperatorTable& t, const std::vector<Term>& terms) {
    MatQI sum;
    for (const auto& term : terms) {
        MatQI p = QI(term.c) * (t.ref(term.a) * t.ref(term.b));
        sum = sum.rows() == 0 && sum.cols() == 0 ? p : sum + p;
    }
    return sum;
}

struct AdjointRule {
    const char* name;
    Q c;
    const char* target;
};

const std::vector<AdjointRule>& adjoint_rules() {
    static const std::vector<AdjointRule> rules{
        {"1_7", Q(-7, 3), "7_1"},  {"7_7", 3, "7_7"},     {"7_14", 4, "14_7"},    {"7_1", -1, "1_7"},
        {"7_27", Q(-4, 3), "27_7"}, {"14_7", 1, "7_14"},  {"14_27", -1, "27_14"}, {"27_7", -1, "7_27"},
        {"27_27", 1, "27_27"},      {"27_14", -1, "14_27"},
    };
    return rules;
}

struct LaplacianRule {
    const char* id;
    int l;
    const char* statement;
    std::vector<Term> terms;
    std::vector<int> degrees;
};

const std::vector<LaplacianRule>& laplacian_rules() {
    static const std::vector<LaplacianRule> rules{
        {"laplacian-1", 1, "Delta on l = 1 is -7/3 D^7_1 D^1_7", {{Q(-7, 3), "7_1", "1_7"}}, {0, 3, 4, 7}},
        {"laplacian-7",
         7,
         "Delta on l = 7 is 9 D^7_7 D^7_7 - 7/3 D^1_7 D^7_1",
         {{9, "7_7", "7_7"}, {Q(-7, 3), "1_7", "7_1"}},
         {1, 2, 3, 4, 5, 6}},
        {"laplacian-14",
         14,
         "Delta on l = 14 is 5 D^7_14 D^14_7 - D^27_14 D^14_27",
         {{5, "7_14", "14_7"}, {-1, "27_14", "14_27"}},
         {2, 5}},
        {"laplacian-27",
         27,
         "Delta on l = 27 is -7/3 D^7_27 D^27_7 - D^14_27 D^27_14 + D^27_27 D^27_27",
         {{Q(-7, 3), "7_27", "27_7"}, {-1, "14_27", "27_14"}, {1, "27_27", "27_27"}},
         {3, 4}},
    };
    return rules;
}

}  // namespace

Report verify_relations(const Mode& k) {
    Report r;
    r.suite = "relations";
    ModeOperatorTable t = build_mode_table(k);
    const auto& dec = Decomposition::instance();

    for (const auto& rel : relations()) r.add_residual(rel.id, rel.statement, max_abs(combine(t, rel.terms)));

    for (const auto& rule : adjoint_rules()) {
        const RefInfo& s = ref_info(rule.name);
        // Component of d* from Λ^{k+1}_m back to Λ^k_l.
        MatQI adj = parameter_component(t.ds.block[s.degree + 1], {s.degree + 1, s.m}, {s.degree, s.l});
        MatQI diff = adj - QI(rule.c) * t.ref(rule.target);
        std::string id = std::string("adjoint-") + rule.name;
        r.add_residual(id, "(D^" + std::string(rule.name) + ")* = " + to_string(rule.c) + " D^" + rule.target,
                       max_abs(diff));
    }

    Q n2 = norm2(k);
    for (const auto& rule : laplacian_rules()) {
        MatQI formula = combine(t, rule.terms);
        MatQI scalar = MatQI::real(n2 * MatQ::identity(rule.l));
        Q worst = max_abs(formula - scalar);
        for (int deg : rule.degrees) {
            TypeLabel lab{deg, rule.l};
            MatQI block = parameter_component(t.lap.block[deg], lab, lab);
            track(worst, max_abs(block - formula));
            // The Laplacian preserves the type.
            MatQI full = t.lap.block[deg];
            MatQI p = MatQI::real(dec.projector(lab));
            track(worst, max_abs(full * p - p * full));
        }
        r.add_residual(rule.id, rule.statement + std::string(" = |k|^2 on every listed degree"), worst);
    }

    Q lap;
    for (int j = 0; j <= kDim; ++j)
        track(lap, max_abs(t.lap.block[j] - MatQI::real(n2 * MatQ::identity(dim(j)))));
    r.add_residual("laplacian-flat", "Delta = |k|^2 Id in every degree", lap);
    return r;
}

Report verify_harmonic_one_forms(const Mode& k) {
    Report r;
    r.suite = "harmonic-one-forms";
    ModeOperatorTable t = build_mode_table(k);
    MatQ n71 = nullspace(factor(t.ref("7_1")));
    MatQ n77 = nullspace(factor(t.ref("7_7")));
    MatQ n714 = nullspace(factor(t.ref("7_14")));
    MatQ n727 = nullspace(factor(t.ref("7_27")));
    // ker Δ on the parameters of Λ¹_7.
    MatQ harmonic = nullspace(factor(parameter_component(t.lap.block[1], {1, 7}, {1, 7})));

    r.add("ker-77-eq-ker-7-14", "ker D^7_7 = ker D^7_14", same_span(n77, n714),
          "dim " + std::to_string(n77.cols()) + " / " + std::to_string(n714.cols()));
    auto pair = [&](const char* id, const char* stmt, const MatQ& a, const MatQ& b) {
        MatQ x = intersect(a, b);
        bool ok = x.cols() == harmonic.cols() && same_span(x, harmonic);
        r.add(id, stmt, ok, "dim " + std::to_string(x.cols()) + ", harmonic " + std::to_string(harmonic.cols()));
    };
    pair("ker-71-77", "ker D^7_1 and ker D^7_7 meet in ker Delta", n71, n77);
    pair("ker-71-727", "ker D^7_1 and ker D^7_27 meet in ker Delta", n71, n727);
    pair("ker-77-727", "ker D^7_7 and ker D^7_27 meet in ker Delta", n77, n727);
    int expected = is_zero_mode(k) ? 7 : 0;
    r.add("harmonic-slice", "ker Delta on 1_7 is everything at k = 0 and zero otherwise",
          harmonic.cols() == expected, "dim " + std::to_string(harmonic.cols()));
    return r;
}

Report verify_symbol_regularity(const Vector& xi) {
    Report r;
    r.suite = "symbol";
    if (std::all_of(xi.begin(), xi.end(), [](const Q& x) { return sgn(x) == 0; }))
        throw std::invalid_argument("symbol regularity needs xi != 0");
    Form beta = interior(xi, standard_g2().phi);
    static const int expected[10] = {0, 0, 1, 7, 21, 21, 7, 1, 0, 0};
    for (int k = 0; k <= 9; ++k) {
        int src = dim(k - 2), dst = dim(k);
        int rk = 0;
        if (src > 0 && dst > 0) rk = rank(wedge_matrix(beta, k - 2));
        bool ok = rk == expected[k];
        std::string what;
        if (k <= 4) {
            ok = ok && rk == src;
            what = "injective";
        } else {
            ok = ok && rk == dst;
            what = "surjective";
        }
        r.add("symbol-" + std::to_string(k),
              "(xi.phi)^ from degree " + std::to_string(k - 2) + " to " + std::to_string(k) + " is " + what +
                  " with rank " + std::to_string(expected[k]),
              ok, "rank " + std::to_string(rk));
    }
    return r;
}

namespace {

int degree_exponent(int j) { return j; }
int odd_exponent(int) { return 1; }

}  // namespace

Report verify_commutation(const Mode& k) {
    Report r;
    r.suite = "commutation";
    ModeOperatorTable t = build_mode_table(k);
    const auto& g2 = standard_g2();
    GradedOp lphi = wedge_op(g2.phi), lpsi = wedge_op(g2.psi);
    Vector kv = mode_vector(k);
    QI i = QI::i();

    auto res = [&](const char* id, const char* stmt, const GradedOp& x) { r.add_residual(id, stmt, x.max_residual()); };
    res("d-squared", "d d = 0", t.d * t.d);
    res("ds-squared", "d* d* = 0", t.ds * t.ds);
    res("laplacian-def", "Delta = d d* + d* d", t.lap - (t.d * t.ds + t.ds * t.d));
    res("ds-star", "d* = (-1)^k * d * on k-forms", t.ds - star_conjugate(t.d, degree_exponent));
    res("LB-frame", "L_B = (k.phi) ^ i", t.LB - i * wedge_op(interior(kv, g2.phi)));
    res("LK-frame", "L_K = -(k.psi) ^ i", t.LK + i * wedge_op(interior(kv, g2.psi)));
    res("LB-ds", "L_B = -d*(phi ^ .) - phi ^ d*", t.LB + t.ds * lphi + lphi * t.ds);
    res("LK-ds", "L_K = d*(psi ^ .) - psi ^ d*", t.LK - (t.ds * lpsi - lpsi * t.ds));
    res("LB-adjoint-star", "L_B* = -* L_B *", t.LBs - star_conjugate(t.LB, odd_exponent));
    res("LK-adjoint-star", "L_K* = (-1)^k * L_K * on k-forms", t.LKs - star_conjugate(t.LK, degree_exponent));
    res("LB-ds-commute", "L_B d* = d* L_B", t.LB * t.ds - t.ds * t.LB);
    res("LK-ds-anticommute", "L_K d* = -d* L_K", t.LK * t.ds + t.ds * t.LK);
    res("laplacian-LB", "[Delta, L_B] = 0", t.lap * t.LB - t.LB * t.lap);
    res("laplacian-LK", "[Delta, L_K] = 0", t.lap * t.LK - t.LK * t.lap);
    res("LB-LK", "L_B L_K = 0", t.LB * t.LK);
    res("LK-LB", "L_K L_B = 0", t.LK * t.LB);
    res("LK-squared", "L_K L_K = 0", t.LK * t.LK);
    res("d-LB", "d L_B = L_B d", t.d * t.LB - t.LB * t.d);
    res("d-LK", "d L_K = -L_K d", t.d * t.LK + t.LK * t.d);

    Q harmonic;
    for (int j = 0; j <= kDim; ++j) {
        MatQ h = nullspace(factor(t.lap.block[j]));
        MatQI hq = MatQI::real(h);
        if (in_range(j + 2)) track(harmonic, max_abs(t.LB.block[j] * hq));
        if (in_range(j + 3)) track(harmonic, max_abs(t.LK.block[j] * hq));
    }
    r.add_residual("harmonic-slice", "L_B = L_K = 0 on ker Delta", harmonic);
    return r;
}

// ---------------------------------------------------------------------------
// Cohomology

namespace {

// Real factors of d, 𝓛_B and 𝓛_K on one mode: d = iK, 𝓛_B = iW, 𝓛_K = −iV.
struct RealFactors {
    std::array<MatQ, kDim + 1> K, W, V;
    MatQ k(int j) const { return in_range(j) ? K[j] : MatQ(dim(j + 1), dim(j)); }
    MatQ w(int j) const { return in_range(j) ? W[j] : MatQ(dim(j + 2), dim(j)); }
    MatQ v(int j) const { return in_range(j) ? V[j] : MatQ(dim(j + 3), dim(j)); }
};

RealFactors real_factors(const Mode& k) {
    const auto& g2 = standard_g2();
    Vector kv = mode_vector(k);
    Form kf = flat(kv), beta = interior(kv, g2.phi), gamma = interior(kv, g2.psi);
    RealFactors f;
    for (int j = 0; j <= kDim; ++j) {
        f.K[j] = wedge_matrix(kf, j);
        f.W[j] = wedge_matrix(beta, j);
        f.V[j] = wedge_matrix(gamma, j);
    }
    return f;
}

int rk(const MatQ& m) { return m.rows() == 0 || m.cols() == 0 ? 0 : rank(m); }

MatQ kernel(const MatQ& m) { return m.rows() == 0 ? MatQ::identity(m.cols()) : nullspace(m); }

// dim(im A ∩ ker B) = rank A − rank BA.
int image_in_kernel(const MatQ& a, const MatQ& b) { return rk(a) - rk(b * a); }

// ker 𝓛_B ∩ im 𝓛_B in degree j.
MatQ ker_im_LB(const RealFactors& f, int j) {
    MatQ a = f.w(j - 2);
    MatQ x = a * kernel(f.w(j) * a);
    return x.cols() == 0 ? MatQ(dim(j), 0) : column_basis(x);
}

}  // namespace

namespace {

constexpr std::int64_t DegreeDims::*kFields[] = {
    &DegreeDims::ker_d,          &DegreeDims::im_d,          &DegreeDims::harmonic,
    &DegreeDims::ker_LB,         &DegreeDims::im_LB_ker_LB,  &DegreeDims::H_phi,
    &DegreeDims::ker_LK,         &DegreeDims::im_LK,         &DegreeDims::H_psi,
    &DegreeDims::im_d_ker_LB,    &DegreeDims::im_ds_ker_LB,  &DegreeDims::im_d_ker_LB_ker_LBs,
    &DegreeDims::im_ds_ker_LB_ker_LBs, &DegreeDims::H_ker_LB, &DegreeDims::H_ker_im_LB,
    &DegreeDims::d_on_H_phi,
};

}  // namespace

DegreeDims& DegreeDims::operator+=(const DegreeDims& o) {
    for (auto f : kFields) this->*f += o.*f;
    return *this;
}

DegreeDims DegreeDims::scaled(std::int64_t n) const {
    DegreeDims z = *this;
    for (auto f : kFields) z.*f *= n;
    return z;
}

bool operator==(const DegreeDims& a, const DegreeDims& b) {
    for (auto f : kFields)
        if (a.*f != b.*f) return false;
    return true;
}

ComplexSnapshot mode_cohomology(const Mode& k) {
    RealFactors f = real_factors(k);
    ComplexSnapshot s;
    std::array<MatQ, kDim + 2> S;
    for (int j = 0; j <= kDim + 1; ++j) S[j] = ker_im_LB(f, j);
    for (int j = 0; j <= kDim; ++j) {
        DegreeDims& x = s.deg[j];
        int n = dim(j);
        x.ker_d = n - rk(f.k(j));
        x.im_d = rk(f.k(j - 1));
        x.harmonic = is_zero_mode(k) ? n : 0;
        x.ker_LB = n - rk(f.w(j));
        x.im_LB_ker_LB = image_in_kernel(f.w(j - 2), f.w(j));
        x.H_phi = x.ker_LB - x.im_LB_ker_LB;
        x.ker_LK = n - rk(f.v(j));
        x.im_LK = rk(f.v(j - 3));
        x.H_psi = x.ker_LK - x.im_LK;

        MatQ ds_in = f.k(j).transpose();  // d* : Λ^{j+1} → Λ^j up to −i
        MatQ both = vstack(f.w(j), f.w(j - 2).transpose());
        x.im_d_ker_LB = image_in_kernel(f.k(j - 1), f.w(j));
        x.im_ds_ker_LB = image_in_kernel(ds_in, f.w(j));
        x.im_d_ker_LB_ker_LBs = image_in_kernel(f.k(j - 1), both);
        x.im_ds_ker_LB_ker_LBs = image_in_kernel(ds_in, both);

        int cycles = n - rk(vstack(f.k(j), f.w(j)));
        int boundaries = rk(f.k(j - 1) * kernel(f.w(j - 1)));
        x.H_ker_LB = cycles - boundaries;

        int sc = S[j].cols() - rk(f.k(j) * S[j]);
        int sb = j == 0 ? 0 : rk(f.k(j - 1) * S[j - 1]);
        x.H_ker_im_LB = sc - sb;

        MatQ image = hstack(f.k(j) * kernel(f.w(j)), S[j + 1]);
        x.d_on_H_phi = rk(image) - S[j + 1].cols();
    }
    return s;
}

Report verify_complex_figures(const Mode& k) {
    Report r;
    r.suite = "complexes";
    RealFactors f = real_factors(k);
    ComplexSnapshot s = mode_cohomology(k);
    bool zero = is_zero_mode(k);

    bool derham = true, trivial = true, ranks = true;
    std::string dv, tv;
    for (int j = 0; j <= kDim; ++j) {
        const auto& x = s.deg[j];
        int derham_j = x.ker_d - x.im_d;
        if (x.H_ker_LB != derham_j) derham = false;
        if (x.H_ker_im_LB != 0) trivial = false;
        if (x.im_d > x.ker_d || x.ker_LB < x.im_LB_ker_LB || x.ker_LK < x.im_LK) ranks = false;
        if (j + 1 <= kDim && dim(j) - x.ker_d != s.deg[j + 1].im_d) ranks = false;
        dv += (j ? "," : "") + std::to_string(x.H_ker_LB);
        tv += (j ? "," : "") + std::to_string(x.H_ker_im_LB);
    }
    r.add("ker-LB-derham", "cohomology of (ker L_B, d) equals de Rham cohomology", derham, dv);
    r.add("ker-im-LB-trivial", "cohomology of (ker L_B cap im L_B, d) vanishes", trivial, tv);
    r.add("rank-nullity", "rank-nullity holds for d, L_B and L_K in every degree", ranks, "");

    bool sub = true;
    for (int j = 0; j < kDim; ++j) {
        MatQ a = ker_im_LB(f, j), b = ker_im_LB(f, j + 1);
        MatQ img = f.k(j) * a;
        if (!img.is_zero() && !span_contains(b, img)) sub = false;
    }
    r.add("ker-im-LB-subcomplex", "d maps ker L_B cap im L_B into itself", sub, "");

    bool equal = true;
    std::string cv;
    for (int j = 1; j <= kDim; ++j) {
        MatQ imd = f.k(j - 1);
        MatQ lhs = imd.is_zero() ? MatQ(dim(j), 0) : intersect(column_basis(imd), kernel(f.w(j)));
        MatQ rhs_raw = f.k(j - 1) * kernel(f.w(j - 1));
        MatQ rhs = rhs_raw.is_zero() ? MatQ(dim(j), 0) : column_basis(rhs_raw);
        bool ok = lhs.cols() == rhs.cols() && (lhs.cols() == 0 || same_span(lhs, rhs));
        if (!ok) equal = false;
        cv += (j > 1 ? "," : "") + std::to_string(lhs.cols());
    }
    r.add("im-d-ker-LB", "(im d) cap ker L_B = d(ker L_B) in every degree", equal, cv);

    const auto& d3 = s.deg[3];
    r.add("im-ds-ker-LB-ker-LBs", "(im d*)^3 cap ker L_B = (im d*)^3 cap ker L_B*",
          d3.im_ds_ker_LB == d3.im_ds_ker_LB_ker_LBs,
          std::to_string(d3.im_ds_ker_LB) + " / " + std::to_string(d3.im_ds_ker_LB_ker_LBs));

    MatQ kerLB3 = kernel(f.w(3));
    MatQ ds3 = f.k(2).transpose();  // d* on 3-forms up to −i
    r.add_residual("ker-LB-coclosed", "(ker L_B)^3 lies in ker d*", max_abs(ds3 * kerLB3));

    // Degree 4: ker 𝓛_B = harmonic ⊕ (im d ∩ ker 𝓛_B) ⊕ (im d* ∩ ker 𝓛_B).
    const auto& d4 = s.deg[4];
    r.add("ker-LB-split-4", "(ker L_B)^4 splits into harmonic, exact and coexact parts",
          d4.ker_LB == d4.harmonic + d4.im_d_ker_LB + d4.im_ds_ker_LB,
          std::to_string(d4.ker_LB) + " = " + std::to_string(d4.harmonic) + " + " + std::to_string(d4.im_d_ker_LB) +
              " + " + std::to_string(d4.im_ds_ker_LB));
    MatQ s4 = ker_im_LB(f, 4);
    MatQ im_d4 = f.k(3);
    int triple = (s4.cols() == 0 || im_d4.is_zero()) ? 0 : intersect(column_basis(im_d4), s4).cols();
    r.add("im-d-ker-im-LB-4", "(im d)^4 cap ker L_B cap im L_B = 0", triple == 0, "dim " + std::to_string(triple));

    bool dual = true;
    for (int j = 2; j <= kDim; ++j) {
        MatQ rhs = star_matrix(7 - j) * f.w(7 - j).transpose();
        if (!same_span(f.w(j - 2), rhs)) dual = false;
    }
    r.add("im-LB-star", "im L_B = * im L_B* in every degree", dual, "");

    bool star = true;
    for (int j = 0; j <= kDim; ++j)
        if (s.deg[j].H_phi != s.deg[7 - j].H_phi) star = false;
    r.add("H-phi-duality", "dim H^j_phi = dim H^{7-j}_phi", star, "");

    bool pattern = true, psi = true;
    std::string pv, qv;
    for (int j = 0; j <= kDim; ++j) {
        const auto& x = s.deg[j];
        pv += (j ? "," : "") + std::to_string(x.H_phi);
        qv += (j ? "," : "") + std::to_string(x.H_psi);
        if (zero) {
            if (x.H_phi != dim(j) || x.H_psi != dim(j)) pattern = psi = false;
            continue;
        }
        if ((j == 3 || j == 4) ? x.H_phi <= 0 : x.H_phi != 0) pattern = false;
        if ((j >= 2 && j <= 5) ? x.H_psi <= 0 : x.H_psi != 0) psi = false;
    }
    if (!zero && s.deg[3].H_phi != s.deg[4].H_phi) pattern = false;
    r.add("H-phi-pattern", zero ? "H^j_phi = C(7,j) at k = 0" : "H^j_phi vanishes outside degrees 3, 4 and H^3 = H^4 > 0",
          pattern, pv);
    r.add("H-psi-pattern", zero ? "H^j_psi = C(7,j) at k = 0" : "H^j_psi is nonzero exactly in degrees 2..5", psi, qv);

    bool drank = true;
    std::string rv;
    for (int j = 0; j <= kDim; ++j) {
        int got = s.deg[j].d_on_H_phi;
        rv += (j ? "," : "") + std::to_string(got);
        int want = (!zero && j == 3) ? static_cast<int>(s.deg[3].H_phi) : 0;
        if (got != want) drank = false;
    }
    r.add("d-on-H-phi", "d on H_phi is an isomorphism H^3 -> H^4 and zero elsewhere", drank, rv);
    return r;
}

// ---------------------------------------------------------------------------
// Symmetries and truncation

Mode SignedPermutation::act(const Mode& k) const {
    Mode out{};
    for (int i = 0; i < kDim; ++i) out[perm[i]] = sign[i] * k[i];
    return out;
}

const std::vector<SignedPermutation>& phi_symmetries() {
    static const std::vector<SignedPermutation> group = [] {
        const Form& phi = standard_g2().phi;
        const auto& b3 = basis(3);
        std::vector<std::pair<std::uint8_t, int>> terms;  // support mask, coefficient sign
        for (int t = 0; t < phi.size(); ++t)
            if (sgn(phi[t]) != 0) terms.emplace_back(b3[t].mask, sgn(phi[t]));
        auto coefficient = [&](std::uint8_t mask) {
            for (auto [m, c] : terms)
                if (m == mask) return c;
            return 0;
        };
        std::vector<SignedPermutation> out;
        std::array<int, kDim> p{0, 1, 2, 3, 4, 5, 6};
        do {
            // Image of each monomial e^{abc} as (mask, reordering sign).
            std::vector<std::pair<std::uint8_t, int>> image;
            bool support = true;
            for (auto [m, c] : terms) {
                auto idx = MultiIndex{m}.indices();
                int a = p[idx[0] - 1], b = p[idx[1] - 1], d = p[idx[2] - 1];
                std::uint8_t ma = 1u << a, mb = 1u << b, md = 1u << d;
                std::uint8_t mask = ma | mb | md;
                int sign = wedge_sign(ma, mb) * wedge_sign(ma | mb, md);
                if (coefficient(mask) == 0) {
                    support = false;
                    break;
                }
                image.emplace_back(mask, sign * c);
            }
            if (!support) continue;
            for (int bits = 0; bits < (1 << kDim); ++bits) {
                bool ok = true;
                for (std::size_t t = 0; t < terms.size() && ok; ++t) {
                    int flips = __builtin_popcount(static_cast<unsigned>(bits) & terms[t].first);
                    int c = (flips % 2 ? -1 : 1) * image[t].second;
                    ok = c == coefficient(image[t].first);
                }
                if (!ok) continue;
                SignedPermutation g;
                g.perm = p;
                for (int i = 0; i < kDim; ++i) g.sign[i] = (bits >> i) & 1 ? -1 : 1;
                out.push_back(g);
            }
        } while (std::next_permutation(p.begin(), p.end()));
        return out;
    }();
    return group;
}

namespace {

int thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("G2CALC_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

struct Orbit {
    Mode rep{};
    int shell = 0;
    std::int64_t size = 0;
};

int max_norm(const Mode& k) {
    int m = 0;
    for (int x : k) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

TruncatedCohomology truncated_cohomology(int n, int threads) {
    if (n < 1) throw std::invalid_argument("truncation must be at least 1");
    const auto& group = phi_symmetries();
    int side = 2 * n + 1;
    std::int64_t total = 1;
    for (int i = 0; i < kDim; ++i) total *= side;
    auto encode = [&](const Mode& k) {
        std::int64_t c = 0;
        for (int i = 0; i < kDim; ++i) c = c * side + (k[i] + n);
        return c;
    };
    std::vector<bool> seen(static_cast<std::size_t>(total), false);
    std::vector<Orbit> orbits;
    for (std::int64_t code = 0; code < total; ++code) {
        if (seen[code]) continue;
        Mode k{};
        std::int64_t c = code;
        for (int i = kDim - 1; i >= 0; --i) {
            k[i] = static_cast<int>(c % side) - n;
            c /= side;
        }
        Orbit o{k, max_norm(k), 0};
        for (const auto& g : group)
            for (int s : {1, -1}) {
                Mode m = g.act(k);
                for (auto& x : m) x *= s;
                std::int64_t e = encode(m);
                if (!seen[e]) {
                    seen[e] = true;
                    ++o.size;
                }
            }
        orbits.push_back(o);
    }

    std::vector<ComplexSnapshot> snaps(orbits.size());
    int workers = std::max(1, std::min<int>(thread_count(threads), static_cast<int>(orbits.size())));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < orbits.size(); i += workers) snaps[i] = mode_cohomology(orbits[i].rep);
        });
    for (auto& t : pool) t.join();

    TruncatedCohomology out;
    out.n = n;
    out.orbits = static_cast<std::int64_t>(orbits.size());
    out.uniform = true;
    bool have_nonzero = false;
    std::vector<ComplexSnapshot> shell(n + 1);
    std::vector<std::int64_t> shell_modes(n + 1, 0);
    for (std::size_t i = 0; i < orbits.size(); ++i) {
        const Orbit& o = orbits[i];
        if (o.shell == 0) {
            shell[0] = snaps[i];
            shell_modes[0] = 1;
            continue;
        }
        if (!have_nonzero) {
            out.nonzero_mode = snaps[i];
            have_nonzero = true;
        } else if (!(snaps[i] == out.nonzero_mode)) {
            out.uniform = false;
        }
        // One mode per ±k pair; orbits are closed under k ↦ −k.
        std::int64_t pairs = o.size / 2;
        for (int j = 0; j <= kDim; ++j) shell[o.shell].deg[j] += snaps[i].deg[j].scaled(pairs);
        shell_modes[o.shell] += pairs;
    }
    ComplexSnapshot acc;
    std::int64_t modes = 0;
    for (int s = 0; s <= n; ++s) {
        for (int j = 0; j <= kDim; ++j) acc.deg[j] += shell[s].deg[j];
        modes += shell_modes[s];
        if (s >= 1) out.levels.push_back({s, modes, acc});
    }
    return out;
}

}  // namespace g2calc
