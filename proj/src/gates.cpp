#include "qhc/gates.hpp"

#include <algorithm>
#include <cmath>

#include "qhc/error.hpp"

namespace qhc::gates {

namespace {

struct FamilyName {
    Family family;
    std::string_view name;
};

constexpr FamilyName kFamilyNames[] = {
    {Family::generic3, "generic3"},
    {Family::and4, "and4"},
    {Family::xor4, "xor4"},
    {Family::half_adder5, "half_adder5"},
    {Family::full_adder8_typ, "full_adder8_typ"},
    {Family::me_half_adder3, "me_half_adder3"},
    {Family::me_full_adder5, "me_full_adder5"},
    {Family::custom, "custom"},
};

double param(const GateDescriptor& d, const std::string& name) {
    const auto it = d.params.find(name);
    if (it == d.params.end())
        throw Error(ErrorCode::BadParams,
                    std::string(family_name(d.family)) + " requires parameter '" + name + "'");
    return it->second;
}

SymMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) { return SymMatrix(rows); }

double me_full_adder5_k(double eta) {
    const double k2 = (16.0 * eta * eta - 9.0) / 6.0;
    if (k2 < 0.0) throw Error(ErrorCode::BadParams, "me_full_adder5 requires eta^2 >= 9/16");
    return std::sqrt(k2);
}

// Recovers base + positions from a black-box family by differencing against
// the all-zero input, then checks linearity on every Boolean input.
LinearFamily infer_linear_form(const std::function<SymMatrix(std::span<const double>)>& h, int arity) {
    LinearFamily f;
    f.input_arity = arity;
    std::vector<double> x(static_cast<std::size_t>(arity), 0.0);
    f.base = h(x);
    const std::size_t n = f.base.order();
    for (int v = 0; v < arity; ++v) {
        std::fill(x.begin(), x.end(), 0.0);
        x[static_cast<std::size_t>(v)] = 1.0;
        const SymMatrix hv = h(x);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                const double diff = hv(i, j) - f.base(i, j);
                if (diff != 0.0) f.positions.push_back({v, i, j, diff});
            }
    }
    return f;
}

SymMatrix evaluate(const LinearFamily& f, std::span<const double> input) {
    if (static_cast<int>(input.size()) != f.input_arity)
        throw Error(ErrorCode::UnknownInput, "input length " + std::to_string(input.size()) + " != arity " +
                                                 std::to_string(f.input_arity));
    SymMatrix h = f.base;
    for (const auto& p : f.positions) h.add(p.i, p.j, p.coeff * input[static_cast<std::size_t>(p.var)]);
    return h;
}

std::vector<double> boolean_point(std::uint32_t index, int arity) {
    const auto bits = logic::bits_of(index, arity);
    return {bits.begin(), bits.end()};
}

} // namespace

std::string_view family_name(Family f) {
    for (const auto& fn : kFamilyNames)
        if (fn.family == f) return fn.name;
    return "unknown";
}

Family parse_family(std::string_view name) {
    for (const auto& fn : kFamilyNames)
        if (fn.name == name) return fn.family;
    throw Error(ErrorCode::BadInput, "unknown gate family '" + std::string(name) + "'");
}

std::vector<Family> catalog_families() {
    return {Family::generic3,        Family::and4,           Family::xor4,          Family::half_adder5,
            Family::full_adder8_typ, Family::me_half_adder3, Family::me_full_adder5};
}

GateDescriptor make_generic3(double e, double a, double k) {
    return {Family::generic3, {{"e", e}, {"a", a}, {"k", k}}, 2, std::nullopt};
}
GateDescriptor make_and4(double x) { return {Family::and4, {{"x", x}}, 2, std::nullopt}; }
GateDescriptor make_xor4(double x) { return {Family::xor4, {{"x", x}}, 2, std::nullopt}; }
GateDescriptor make_half_adder5(double x) { return {Family::half_adder5, {{"x", x}}, 2, std::nullopt}; }
GateDescriptor make_full_adder8_typ() { return {Family::full_adder8_typ, {}, 3, std::nullopt}; }
GateDescriptor make_me_half_adder3(double e) { return {Family::me_half_adder3, {{"e", e}}, 2, std::nullopt}; }

GateDescriptor make_me_full_adder5(double eta) {
    const double k = me_full_adder5_k(eta);
    return {Family::me_full_adder5,
            {{"eta", eta}, {"k", k}, {"x", k}, {"a", -1.5 + 4.0 * eta * eta}, {"b", 0.75}, {"e", 1.0}, {"d", 1.0}},
            3,
            std::nullopt};
}

GateDescriptor make_custom(LinearFamily f) {
    GateDescriptor d{Family::custom, {}, f.input_arity, std::nullopt};
    for (const auto& p : f.positions) {
        if (p.var < 0 || p.var >= f.input_arity) throw Error(ErrorCode::BadParams, "input position variable out of range");
        if (p.i >= f.base.order() || p.j >= f.base.order())
            throw Error(ErrorCode::BadParams, "input position outside the matrix");
    }
    d.custom = std::move(f);
    return d;
}

GateDescriptor catalog_gate(Family f, const std::map<std::string, double>& params) {
    const auto get = [&](const char* name, double fallback) {
        const auto it = params.find(name);
        return it == params.end() ? fallback : it->second;
    };
    switch (f) {
    case Family::generic3: return make_generic3(get("e", 0.0), get("a", 0.0), get("k", 1.0));
    case Family::and4: return make_and4(get("x", 1.0));
    case Family::xor4: return make_xor4(get("x", 1.0));
    case Family::half_adder5: return make_half_adder5(get("x", 1.0));
    case Family::full_adder8_typ: return make_full_adder8_typ();
    case Family::me_half_adder3: return make_me_half_adder3(get("e", 0.0));
    case Family::me_full_adder5: {
        GateDescriptor d = make_me_full_adder5(get("eta", std::sqrt(15.0) / 4.0));
        for (const auto& [name, value] : params) d.params[name] = value;
        return d;
    }
    case Family::custom: break;
    }
    throw Error(ErrorCode::BadParams, "custom families need an explicit matrix");
}

LinearFamily linear_form(const GateDescriptor& d) {
    LinearFamily f;
    switch (d.family) {
    case Family::generic3: {
        const double e = param(d, "e"), a = param(d, "a"), k = param(d, "k");
        f.base = from_rows({{e, 0, k}, {0, a, 0}, {k, 0, e}});
        f.positions = {{0, 0, 1}, {1, 1, 2}};
        f.input_arity = 2;
        break;
    }
    case Family::and4: {
        const double x = param(d, "x");
        f.base = from_rows({{0, 1, 0, -x}, {1, 0, 0, -x}, {0, 0, -1, x}, {-x, -x, x, -x * x}});
        f.positions = {{0, 0, 2}, {1, 1, 2}};
        f.input_arity = 2;
        break;
    }
    case Family::xor4: {
        const double x = param(d, "x");
        f.base = from_rows({{0, 1, 0, -x}, {1, 0, 0, -x}, {0, 0, -1, 0}, {-x, -x, 0, x * x}});
        f.positions = {{0, 0, 2}, {1, 1, 2}};
        f.input_arity = 2;
        break;
    }
    case Family::half_adder5: {
        const double x = param(d, "x");
        f.base = from_rows({{0, 1, 0, -x, -x},
                            {1, 0, 0, -x, -x},
                            {0, 0, -1, x, 0},
                            {-x, -x, x, -x * x, 0},
                            {-x, -x, 0, 0, x * x}});
        f.positions = {{0, 0, 2}, {1, 1, 2}};
        f.input_arity = 2;
        break;
    }
    case Family::full_adder8_typ: {
        f.base = from_rows({{-1, 0, 0, 0, 0, 0, -1, 0.5},
                            {0, 0.5, 0, 0, 0, 1, 0.27, -1.17},
                            {0, 0, -1, 0, 0, 0, -1, 0.5},
                            {0, 0, 0, 0.5, 0, 1, 0.27, -1.17},
                            {0, 0, 0, 0, -1, 0, 1.56, 0.66},
                            {0, 1, 0, 1, 0, 0.5, -1.40, -2.88},
                            {-1, 0.27, -1, 0.27, 1.56, -1.40, -3.96, -0.40},
                            {0.5, -1.17, 0.5, -1.17, 0.66, -2.88, -0.40, 2.12}});
        f.positions = {{0, 0, 1}, {1, 2, 3}, {2, 4, 5}};
        f.input_arity = 3;
        break;
    }
    case Family::me_half_adder3: {
        const double e = param(d, "e");
        f.base = from_rows({{2 * e, 0, -2 * e}, {0, 0, 0}, {-2 * e, 0, 2 * e}});
        f.positions = {{0, 0, 1}, {1, 1, 2}};
        f.input_arity = 2;
        break;
    }
    case Family::me_full_adder5: {
        const double eta = param(d, "eta");
        me_full_adder5_k(eta); // enforces η² ≥ 9/16
        const double k = param(d, "k"), x = param(d, "x"), a = param(d, "a"), b = param(d, "b"),
                     e = param(d, "e"), dd = param(d, "d");
        f.base = from_rows({{e, 0, 0, k, 0}, {0, dd, 0, x, 0}, {0, 0, e, k, 0}, {k, x, k, a, eta}, {0, 0, 0, eta, b}});
        f.positions = {{0, 0, 1}, {1, 1, 2}, {2, 0, 2}};
        f.input_arity = 3;
        break;
    }
    case Family::custom:
        if (!d.custom) throw Error(ErrorCode::BadParams, "custom family without matrix data");
        return *d.custom;
    }
    return f;
}

std::size_t family_order(const GateDescriptor& d) { return linear_form(d).base.order(); }

SymMatrix build(const GateDescriptor& d, std::span<const double> input) { return evaluate(linear_form(d), input); }

SymMatrix build(const GateDescriptor& d, std::uint32_t input_index) {
    const LinearFamily f = linear_form(d);
    if (input_index >> f.input_arity) throw Error(ErrorCode::UnknownInput, "input index out of range");
    return evaluate(f, boolean_point(input_index, f.input_arity));
}

// ---------------------------------------------------------------------------

std::optional<Table1Params> table1_params(Table1Gate g, double k) {
    if (k == 0.0) throw Error(ErrorCode::BadParams, "k must be nonzero");
    switch (g) {
    case Table1Gate::And: return Table1Params{0.0, 2.0 / k, k};
    case Table1Gate::Or: return Table1Params{2.0 * k, 2.0 / (3.0 * k), k};
    case Table1Gate::Xor: return std::nullopt;
    case Table1Gate::Nand: return Table1Params{0.0, 0.0, k};
    case Table1Gate::Nor: return Table1Params{1.0 / (2.0 * k), 0.0, k};
    case Table1Gate::Nxor: return Table1Params{k, 0.0, k};
    }
    return std::nullopt;
}

std::optional<double> table1_polynomial(Table1Gate g, double k, int alpha, int beta) {
    const double a = alpha, b = beta;
    switch (g) {
    case Table1Gate::And: return -2.0 * k * (1.0 - a * b);
    case Table1Gate::Or: return 2.0 * k * (1.0 - a - b + a * b);
    case Table1Gate::Xor: return std::nullopt;
    case Table1Gate::Nand: return 2.0 * k * a * b;
    case Table1Gate::Nor: return (1.0 / (2.0 * k)) * (a + b - a * b);
    case Table1Gate::Nxor: return -k * (a + b - 2.0 * a * b);
    }
    return std::nullopt;
}

Table1Gate parse_table1_gate(std::string_view name) {
    if (name == "and") return Table1Gate::And;
    if (name == "or") return Table1Gate::Or;
    if (name == "xor") return Table1Gate::Xor;
    if (name == "nand") return Table1Gate::Nand;
    if (name == "nor") return Table1Gate::Nor;
    if (name == "nxor") return Table1Gate::Nxor;
    throw Error(ErrorCode::BadInput, "unknown elementary gate '" + std::string(name) + "'");
}

std::string_view table1_gate_name(Table1Gate g) {
    switch (g) {
    case Table1Gate::And: return "and";
    case Table1Gate::Or: return "or";
    case Table1Gate::Xor: return "xor";
    case Table1Gate::Nand: return "nand";
    case Table1Gate::Nor: return "nor";
    case Table1Gate::Nxor: return "nxor";
    }
    return "unknown";
}

std::vector<ReadingSpec> default_readings(const GateDescriptor& d, double epsilon) {
    switch (d.family) {
    case Family::and4:
    case Family::xor4: return {{0, 3, 0.0, epsilon}};
    case Family::half_adder5: return {{0, 4, 0.0, epsilon}, {1, 3, 0.0, epsilon}};
    case Family::full_adder8_typ: return {{0, 7, 0.0, epsilon}, {1, 6, 0.0, epsilon}};
    case Family::me_half_adder3: return {{0, 1, 1.0, epsilon}, {1, 1, std::sqrt(2.0), epsilon}};
    case Family::me_full_adder5: return {{0, 4, 1.5, epsilon}, {1, 4, 0.0, epsilon}};
    case Family::generic3:
    case Family::custom: break;
    }
    return {};
}

std::string default_table(Family f) {
    switch (f) {
    case Family::and4: return "and";
    case Family::xor4: return "xor";
    case Family::half_adder5:
    case Family::me_half_adder3: return "half_adder";
    case Family::full_adder8_typ:
    case Family::me_full_adder5: return "full_adder";
    case Family::generic3:
    case Family::custom: break;
    }
    return {};
}

// ---------------------------------------------------------------------------

GateDescriptor merge(const GateDescriptor& g1, const GateDescriptor& g2, std::size_t shared) {
    const LinearFamily f1 = linear_form(g1);
    const LinearFamily f2 = linear_form(g2);
    if (f1.input_arity != f2.input_arity) throw Error(ErrorCode::IncompatibleBlocks, "input arities differ");
    const std::size_t n1 = f1.base.order(), n2 = f2.base.order();
    if (shared == 0 || shared > n1 || shared > n2)
        throw Error(ErrorCode::IncompatibleBlocks, "shared block larger than a family");
    const int arity = f1.input_arity;

    for (std::uint32_t idx = 0; idx < (std::uint32_t{1} << arity); ++idx) {
        const auto x = boolean_point(idx, arity);
        const SymMatrix h1 = evaluate(f1, x), h2 = evaluate(f2, x);
        for (std::size_t i = 0; i < shared; ++i)
            for (std::size_t j = 0; j < shared; ++j)
                if (h1(i, j) != h2(i, j))
                    throw Error(ErrorCode::IncompatibleBlocks,
                                "shared blocks differ at (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") for input " + logic::bit_string(idx, arity));
    }

    const std::size_t n = n1 + n2 - shared;
    const auto merged = [&](std::span<const double> x) {
        const SymMatrix h1 = evaluate(f1, x), h2 = evaluate(f2, x);
        // Index map of g2 into the merged order: shared states stay, the rest follow g1.
        const auto w = [&](std::size_t i) { return i < shared ? i : n1 + (i - shared); };
        SymMatrix h(n);
        for (std::size_t i = 0; i < n1; ++i)
            for (std::size_t j = i; j < n1; ++j) h.set(i, j, h1(i, j));
        for (std::size_t i = 0; i < n2; ++i)
            for (std::size_t j = i; j < n2; ++j) {
                if (i < shared && j < shared) continue; // counted once
                h.set(w(i), w(j), h2(i, j));
            }
        return h;
    };
    return make_custom(infer_linear_form(merged, arity));
}

// ---------------------------------------------------------------------------

VerificationReport verify_family(const HamiltonianFn& h, const logic::TruthTable& t,
                                 std::span<const ReadingSpec> readings, const VerifyOptions& opt) {
    if (opt.weight_min <= 0.0) throw Error(ErrorCode::BadInput, "weight_min must be positive");
    if (opt.tol <= 0.0) throw Error(ErrorCode::BadInput, "tol must be positive");
    VerificationReport report;
    const double threshold = opt.weight_min * opt.weight_min;
    for (std::uint32_t idx = 0; idx < t.row_count(); ++idx) {
        const SymMatrix m = h(idx);
        const Spectrum s = eig_sym(m);
        InputRecord rec;
        rec.input = idx;
        rec.bits = logic::bits_of(idx, t.input_arity());
        for (const auto& r : readings) {
            if (r.attach_state >= m.order()) throw Error(ErrorCode::BadInput, "attach state outside the matrix");
            if (r.output_index < 0 || r.output_index >= t.output_arity())
                throw Error(ErrorCode::BadInput, "reading output index outside the truth table");
            ReadingRecord rr;
            rr.output_index = r.output_index;
            rr.energy = r.energy;
            rr.kernel_dimension = eigenspace_dimension(s, r.energy, opt.tol);
            rr.hit = rr.kernel_dimension > 0;
            if (opt.strict_kernel && rr.kernel_dimension > 1)
                throw Error(ErrorCode::AmbiguousKernel, "input " + logic::bit_string(idx, t.input_arity()) + " has a " +
                                                            std::to_string(rr.kernel_dimension) +
                                                            "-dimensional eigenspace at E=" + std::to_string(r.energy));
            rr.weight_sq = projector_weight(s, r.attach_state, r.energy, opt.tol);
            rr.weight = std::sqrt(rr.weight_sq);
            rr.decided = (rr.hit && rr.weight_sq > threshold) ? 1 : 0;
            rr.expected = t.output_bit(idx, r.output_index);
            if (rr.decided != rr.expected) rec.ok = false;
            rec.readings.push_back(rr);
        }
        if (!rec.ok) report.pass = false;
        report.records.push_back(std::move(rec));
    }
    return report;
}

namespace {

HamiltonianFn family_fn(const GateDescriptor& d, const logic::TruthTable& t) {
    LinearFamily f = linear_form(d);
    if (f.input_arity != t.input_arity())
        throw Error(ErrorCode::UnknownInput, "gate arity differs from truth table arity");
    return [f = std::move(f)](std::uint32_t idx) { return evaluate(f, boolean_point(idx, f.input_arity)); };
}

} // namespace

VerificationReport verify_fixed_energy(const GateDescriptor& d, const logic::TruthTable& t,
                                       std::span<const ReadingSpec> readings, const VerifyOptions& opt) {
    for (const auto& r : readings)
        if (r.energy != readings.front().energy)
            throw Error(ErrorCode::BadInput, "fixed-energy verification needs a single reading energy");
    return verify_family(family_fn(d, t), t, readings, opt);
}

VerificationReport verify_multi_energy(const GateDescriptor& d, const logic::TruthTable& t,
                                       std::span<const ReadingSpec> readings, const VerifyOptions& opt) {
    return verify_family(family_fn(d, t), t, readings, opt);
}

CharpolyTable charpoly_table(const GateDescriptor& d, const logic::TruthTable& t, double energy, double zero_tol) {
    const HamiltonianFn h = family_fn(d, t);
    const logic::RingPolynomial ann = logic::annihilator(t);
    CharpolyTable out;
    out.energy = energy;
    const int k = t.input_arity();
    for (std::uint32_t idx = 0; idx < t.row_count(); ++idx) {
        out.values.push_back(char_poly_eval(h(idx), energy));
        const auto bits = logic::bits_of(idx, k);
        const std::vector<double> point(bits.begin(), bits.end());
        out.annihilator.push_back(ann.evaluate(point));
    }

    double scale = 0.0;
    for (double v : out.values) scale = std::max(scale, std::abs(v));
    bool ok = scale > 0.0;
    std::vector<double> ratios;
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        if (out.annihilator[i] == 0.0) {
            if (std::abs(out.values[i]) > zero_tol * std::max(1.0, scale)) ok = false;
        } else {
            ratios.push_back(out.values[i] / out.annihilator[i]);
        }
    }
    if (ok && !ratios.empty()) {
        double mean = 0.0;
        for (double r : ratios) mean += r;
        mean /= static_cast<double>(ratios.size());
        for (double r : ratios)
            if (std::abs(r - mean) > zero_tol * std::max(1.0, std::abs(mean))) ok = false;
        if (std::abs(mean) <= zero_tol) ok = false;
        out.constant = mean;
    }
    out.proportional = ok && !ratios.empty();
    return out;
}

ScanField robustness_scan(const GateDescriptor& d, const ReadingSpec& reading, std::size_t grid_n, double tol) {
    const LinearFamily f = linear_form(d);
    if (f.input_arity != 2) throw Error(ErrorCode::BadInput, "robustness scans need a two-input gate");
    if (grid_n < 2) throw Error(ErrorCode::BadInput, "grid_n must be at least 2");
    if (reading.attach_state >= f.base.order()) throw Error(ErrorCode::BadInput, "attach state outside the matrix");
    ScanField field;
    field.n = grid_n;
    for (std::size_t i = 0; i < grid_n; ++i)
        field.alpha.push_back(static_cast<double>(i) / static_cast<double>(grid_n - 1));
    field.value.resize(grid_n * grid_n);
    for (std::size_t ia = 0; ia < grid_n; ++ia)
        for (std::size_t ib = 0; ib < grid_n; ++ib) {
            const double x[2] = {field.alpha[ia], field.alpha[ib]};
            const Spectrum s = eig_sym(evaluate(f, x));
            field.value[ia * grid_n + ib] = projector_weight(s, reading.attach_state, reading.energy, tol);
        }
    return field;
}

} // namespace qhc::gates
