#include "qhc/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qhc/error.hpp"

namespace qhc::io {

namespace {

const char* const kVarNames[] = {"alpha", "beta", "gamma"};

int parse_var(const json& v) {
    if (v.is_number_integer()) return v.get<int>();
    const auto s = v.get<std::string>();
    for (int i = 0; i < 3; ++i)
        if (s == kVarNames[i]) return i;
    throw Error(ErrorCode::BadInput, "unknown input variable '" + s + "'");
}

json vector_to_json(std::span<const double> v) { return json(std::vector<double>(v.begin(), v.end())); }

} // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::BadInput, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, std::string_view content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::BadInput, "cannot write " + path);
    out << content;
}

std::string fmt(double v) {
    char buf[32];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

json matrix_to_json(const SymMatrix& m) { return matrix_to_json(m.matrix()); }

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

SymMatrix sym_matrix_from_json(const json& j) {
    if (!j.is_array()) throw Error(ErrorCode::BadInput, "matrix must be an array of rows");
    const std::size_t n = j.size();
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!j[i].is_array() || j[i].size() != n) throw Error(ErrorCode::BadInput, "matrix must be square");
        for (std::size_t k = 0; k < n; ++k) m(i, k) = j[i][k].get<double>();
    }
    return SymMatrix(m);
}

json table_to_json(const logic::TruthTable& t) {
    json rows = json::object();
    for (std::uint32_t i = 0; i < t.row_count(); ++i)
        rows[logic::bit_string(i, t.input_arity())] = logic::bit_string(t.row(i), t.output_arity());
    return {{"k", t.input_arity()}, {"l", t.output_arity()}, {"rows", rows}};
}

logic::TruthTable table_from_json(const json& j) {
    try {
        const int k = j.at("k").get<int>();
        const int l = j.at("l").get<int>();
        if (k < 1 || k > 8 || l < 1 || l > 16) throw Error(ErrorCode::BadInput, "table arity out of range");
        std::vector<std::uint32_t> rows(std::size_t{1} << k);
        std::vector<bool> seen(rows.size(), false);
        for (const auto& [in, out] : j.at("rows").items()) {
            const auto outs = out.get<std::string>();
            if (static_cast<int>(in.size()) != k || static_cast<int>(outs.size()) != l)
                throw Error(ErrorCode::BadInput, "row '" + in + "' has the wrong width");
            const auto idx = logic::parse_bit_string(in);
            rows[idx] = logic::parse_bit_string(outs);
            seen[idx] = true;
        }
        for (std::size_t i = 0; i < seen.size(); ++i)
            if (!seen[i]) throw Error(ErrorCode::BadInput, "missing row " + logic::bit_string(static_cast<std::uint32_t>(i), k));
        return logic::TruthTable(k, l, std::move(rows));
    } catch (const json::exception& e) {
        throw Error(ErrorCode::BadInput, std::string("truth table JSON: ") + e.what());
    }
}

logic::TruthTable load_table(const std::string& name_or_path) {
    for (const auto& n : logic::builtin_table_names())
        if (n == name_or_path) return logic::builtin_table(n);
    try {
        return table_from_json(json::parse(read_file(name_or_path)));
    } catch (const json::exception& e) {
        throw Error(ErrorCode::BadInput, std::string("truth table JSON: ") + e.what());
    }
}

json gate_to_json(const gates::GateDescriptor& d) {
    json j;
    j["family"] = std::string(gates::family_name(d.family));
    if (d.family != gates::Family::custom) {
        j["params"] = json::object();
        for (const auto& [k, v] : d.params) j["params"][k] = v;
        return j;
    }
    const auto& f = *d.custom;
    j["order"] = f.base.order();
    j["input_arity"] = f.input_arity;
    j["base"] = matrix_to_json(f.base);
    j["input_positions"] = json::array();
    for (const auto& p : f.positions) {
        json e{{"var", kVarNames[p.var]}, {"i", p.i}, {"j", p.j}};
        if (p.coeff != 1.0) e["coeff"] = p.coeff;
        j["input_positions"].push_back(e);
    }
    return j;
}

gates::GateDescriptor gate_from_json(const json& j) {
    try {
        const auto family = gates::parse_family(j.at("family").get<std::string>());
        if (family != gates::Family::custom) {
            std::map<std::string, double> params;
            if (j.contains("params"))
                for (const auto& [k, v] : j.at("params").items()) params[k] = v.get<double>();
            return gates::catalog_gate(family, params);
        }
        gates::LinearFamily f;
        f.base = sym_matrix_from_json(j.at("base"));
        if (j.contains("order") && j.at("order").get<std::size_t>() != f.base.order())
            throw Error(ErrorCode::BadInput, "order does not match base matrix");
        int arity = 0;
        for (const auto& e : j.at("input_positions")) {
            gates::InputPosition p;
            p.var = parse_var(e.at("var"));
            p.i = e.at("i").get<std::size_t>();
            p.j = e.at("j").get<std::size_t>();
            p.coeff = e.value("coeff", 1.0);
            if (p.i >= f.base.order() || p.j >= f.base.order())
                throw Error(ErrorCode::BadInput, "input position outside the matrix");
            arity = std::max(arity, p.var + 1);
            f.positions.push_back(p);
        }
        f.input_arity = j.value("input_arity", arity);
        return gates::make_custom(std::move(f));
    } catch (const json::exception& e) {
        throw Error(ErrorCode::BadInput, std::string("gate JSON: ") + e.what());
    }
}

gates::GateDescriptor load_gate(const std::string& path) {
    try {
        return gate_from_json(json::parse(read_file(path)));
    } catch (const json::exception& e) {
        throw Error(ErrorCode::BadInput, std::string("gate JSON: ") + e.what());
    }
}

std::string gate_hash(const gates::GateDescriptor& d) {
    const std::string s = gate_to_json(d).dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json report_to_json(const gates::VerificationReport& r) {
    json records = json::array();
    for (const auto& rec : r.records) {
        json readings = json::array();
        for (const auto& rd : rec.readings)
            readings.push_back({{"output_index", rd.output_index},
                                {"energy", rd.energy},
                                {"hit", rd.hit},
                                {"kernel_dimension", rd.kernel_dimension},
                                {"weight", rd.weight},
                                {"weight_sq", rd.weight_sq},
                                {"decided", rd.decided},
                                {"expected", rd.expected}});
        std::string bits;
        for (int b : rec.bits) bits += static_cast<char>('0' + b);
        records.push_back({{"input", bits}, {"ok", rec.ok}, {"readings", readings}});
    }
    return {{"pass", r.pass}, {"records", records}};
}

json charpoly_to_json(const gates::CharpolyTable& c) {
    const int k = static_cast<int>(std::log2(static_cast<double>(c.values.size())));
    json values = json::object(), ann = json::object();
    for (std::size_t i = 0; i < c.values.size(); ++i) {
        const auto key = logic::bit_string(static_cast<std::uint32_t>(i), k);
        values[key] = c.values[i];
        ann[key] = c.annihilator[i];
    }
    json j{{"energy", c.energy}, {"values", values}, {"annihilator", ann}, {"proportional", c.proportional}};
    if (c.proportional) j["constant"] = c.constant;
    return j;
}

std::string scan_csv(const gates::ScanField& f) {
    std::string out = "alpha,beta,weight_sq\n";
    for (std::size_t a = 0; a < f.n; ++a)
        for (std::size_t b = 0; b < f.n; ++b)
            out += fmt(f.alpha[a]) + "," + fmt(f.alpha[b]) + "," + fmt(f.at(a, b)) + "\n";
    return out;
}

json partition_to_json(const schur::BlockPartition& p) {
    json c = json::object();
    for (std::size_t i = 0; i < p.C.size(); ++i)
        c[logic::bit_string(static_cast<std::uint32_t>(i), p.input_arity)] = matrix_to_json(p.C[i]);
    return {{"C", c}, {"A", matrix_to_json(p.A)}, {"B", matrix_to_json(p.B)}};
}

json candidate_to_json(const schur::FullAdderCandidate& c) {
    json j{{"seed_index", c.seed_index},
           {"branch", c.branch},
           {"x0", vector_to_json(c.x0)},
           {"x", vector_to_json(c.x)},
           {"iterations", c.iterations},
           {"status", std::string(schur::status_name(c.status))},
           {"residual_norm", c.residual_norm},
           {"full_residual_norm", c.full_residual_norm}};
    if (!c.message.empty()) j["message"] = c.message;
    if (c.partition) {
        j["u"] = vector_to_json(c.partition->A.column(0));
        j["v"] = vector_to_json(c.partition->A.column(1));
        j["partition"] = partition_to_json(*c.partition);
    }
    return j;
}

json count_to_json(const schur::ConstraintCount& c) { return {{"equations", c.equations}, {"variables", c.variables}}; }

json gaps_to_json(const multiband::GapMetrics& g) {
    return {{"delta1", g.delta1}, {"delta2", g.delta2}, {"xor_energy", g.xor_energy}, {"and_energy", g.and_energy}};
}

json intervals_to_json(std::span<const multiband::ReadingInterval> iv) {
    json out = json::array();
    for (const auto& r : iv) {
        json w = json::array();
        for (auto x : r.witnesses) w.push_back(x);
        out.push_back({{"output_index", r.output_index},
                       {"attach_state", r.attach_state},
                       {"lo", r.lo},
                       {"hi", r.hi},
                       {"midpoint", r.midpoint()},
                       {"min_weight", r.min_weight},
                       {"witnesses", w}});
    }
    return out;
}

std::string intervals_csv(std::span<const multiband::ReadingInterval> iv) {
    std::string out = "output_index,lo,hi,midpoint,min_weight\n";
    for (const auto& r : iv)
        out += std::to_string(r.output_index) + "," + fmt(r.lo) + "," + fmt(r.hi) + "," + fmt(r.midpoint()) + "," +
               fmt(r.min_weight) + "\n";
    return out;
}

json optimization_to_json(const multiband::OptimizationResult& r) {
    return {{"best_e", r.best_e},
            {"delta1", r.best().gaps.delta1},
            {"delta2", r.best().gaps.delta2},
            {"and_weight", r.best().and_weight},
            {"xor_weight", r.best().xor_weight},
            {"and_energies", r.and_energies},
            {"xor_energies", r.xor_energies}};
}

std::string optimization_csv(const multiband::OptimizationResult& r) {
    std::string out = "e,delta1,delta2,and_weight,xor_weight,deviation\n";
    for (const auto& p : r.points)
        out += fmt(p.e) + "," + fmt(p.gaps.delta1) + "," + fmt(p.gaps.delta2) + "," + fmt(p.and_weight) + "," +
               fmt(p.xor_weight) + "," + fmt(p.deviation) + "\n";
    return out;
}

std::string series_csv(const dynamics::PopulationSeries& s) {
    std::string out = "time_ps";
    const std::size_t n = s.populations.empty() ? 0 : s.populations.front().size();
    for (std::size_t j = 0; j < n; ++j) out += ",pop_state_" + std::to_string(j);
    out += "\n";
    for (std::size_t i = 0; i < s.times_ps.size(); ++i) {
        out += fmt(s.times_ps[i]);
        for (double p : s.populations[i]) out += "," + fmt(p);
        out += "\n";
    }
    return out;
}

std::string spectrum_csv(const transport::TransmissionSpectrum& ts, const SpectrumHeader& h) {
    std::string out = "# h=" + fmt(h.h) + " epsilon=" + fmt(h.epsilon) + " attach_state=" +
                      std::to_string(h.attach_state) + " gate=" + h.gate_hash + " input=" + h.input_bits + "\n";
    out += "energy_eV,T\n";
    for (std::size_t i = 0; i < ts.energies.size(); ++i) out += fmt(ts.energies[i]) + "," + fmt(ts.T[i]) + "\n";
    return out;
}

} // namespace qhc::io
