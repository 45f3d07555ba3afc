#include "qhc/cli.hpp"

#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qhc/dynamics.hpp"
#include "qhc/error.hpp"
#include "qhc/gates.hpp"
#include "qhc/io.hpp"
#include "qhc/multiband.hpp"
#include "qhc/schur.hpp"
#include "qhc/transport.hpp"

namespace qhc::cli {

namespace {

using io::json;

struct Common {
    std::string out = "-";
    std::string format = "json";
    std::uint64_t seed = 0;
};

struct GateArgs {
    std::string gate;
    std::vector<std::string> params;
};

struct ReadingArgs {
    std::vector<std::string> readings;
    std::optional<double> energy;
    double epsilon = 1e-3;
};

void add_gate(CLI::App* app, GateArgs& g, bool required = true) {
    auto* opt = app->add_option("--gate", g.gate, "gate JSON file or catalog family name");
    if (required) opt->required();
    app->add_option("--param", g.params, "family parameter override name=value (repeatable)");
}

void add_readings(CLI::App* app, ReadingArgs& r) {
    app->add_option("--reading", r.readings, "reading output:attach_state:energy[:epsilon] (0-based states; repeatable)");
    app->add_option("--energy", r.energy, "override the energy of every reading");
    app->add_option("--epsilon", r.epsilon, "pointer coupling for default readings (eV)")->capture_default_str();
}

gates::GateDescriptor resolve_gate(const GateArgs& g) {
    std::map<std::string, double> params;
    for (const auto& p : g.params) {
        const auto eq = p.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::BadInput, "--param expects name=value");
        params[p.substr(0, eq)] = std::stod(p.substr(eq + 1));
    }
    if (!std::filesystem::exists(g.gate)) {
        const auto f = gates::parse_family(g.gate);
        return gates::catalog_gate(f, params);
    }
    auto d = io::load_gate(g.gate);
    if (!params.empty()) {
        if (d.family == gates::Family::custom) throw Error(ErrorCode::BadInput, "--param does not apply to custom gates");
        for (const auto& [k, v] : params) d.params[k] = v;
        d = gates::catalog_gate(d.family, d.params);
    }
    return d;
}

std::vector<gates::ReadingSpec> resolve_readings(const gates::GateDescriptor& d, const ReadingArgs& r) {
    std::vector<gates::ReadingSpec> out;
    for (const auto& s : r.readings) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
        if (parts.size() < 3 || parts.size() > 4) throw Error(ErrorCode::BadInput, "--reading expects out:state:E[:eps]");
        gates::ReadingSpec rs;
        rs.output_index = std::stoi(parts[0]);
        rs.attach_state = static_cast<std::size_t>(std::stoul(parts[1]));
        rs.energy = std::stod(parts[2]);
        rs.epsilon = parts.size() == 4 ? std::stod(parts[3]) : r.epsilon;
        out.push_back(rs);
    }
    if (out.empty()) out = gates::default_readings(d, r.epsilon);
    if (out.empty()) throw Error(ErrorCode::BadInput, "this gate has no default readings; pass --reading");
    if (r.energy)
        for (auto& rs : out) rs.energy = *r.energy;
    return out;
}

logic::TruthTable resolve_table(const gates::GateDescriptor& d, const std::string& table) {
    if (!table.empty()) return io::load_table(table);
    const auto name = gates::default_table(d.family);
    if (name.empty()) throw Error(ErrorCode::BadInput, "this gate has no default table; pass --table");
    return logic::builtin_table(name);
}

std::uint32_t parse_input(const std::string& s, int arity) {
    const auto idx = logic::parse_bit_string(s);
    if (static_cast<int>(s.size()) != arity) throw Error(ErrorCode::UnknownInput, "input must have " + std::to_string(arity) + " bits");
    return idx;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    for (std::string p; std::getline(ss, p, ',');) out.push_back(std::stod(p));
    return out;
}

void emit_json(const Common& c, const json& j) { io::write_output(c.out, j.dump() + "\n"); }

int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::NoConvergence:
    case ErrorCode::NoRealRoot:
    case ErrorCode::SingularT:
    case ErrorCode::QrsDegenerate:
    case ErrorCode::DegenerateKernel:
    case ErrorCode::ValidationFailed:
    case ErrorCode::SingularProjection:
    case ErrorCode::SingularC: return kNoConvergence;
    case ErrorCode::AmbiguousKernel:
    case ErrorCode::NoInterval: return kVerifyFailed;
    default: return kUsage;
    }
}

std::string bits_of(std::uint32_t idx, int k) { return logic::bit_string(idx, k); }

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Quantum Hamiltonian Computing gate toolkit"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "help for every subcommand");
    Common common;
    std::function<int()> action;

    const auto add_common = [&](CLI::App* sub, bool csv) {
        sub->add_option("-o,--out", common.out, "output path, - for stdout")->capture_default_str();
        sub->add_option("--format", common.format, csv ? "json or csv" : "json")
            ->capture_default_str()
            ->check(CLI::IsMember(csv ? std::vector<std::string>{"json", "csv"} : std::vector<std::string>{"json"}));
        sub->add_option("--seed", common.seed, "random seed")->capture_default_str();
    };

    // catalog
    auto* catalog = app.add_subcommand("catalog", "list catalog families with default parameters and readings");
    add_common(catalog, false);
    std::string catalog_family;
    catalog->add_option("--family", catalog_family, "restrict to one family");
    catalog->callback([&] {
        action = [&] {
            json fams = json::array();
            for (auto f : gates::catalog_families()) {
                if (!catalog_family.empty() && gates::family_name(f) != catalog_family) continue;
                const auto d = gates::catalog_gate(f);
                json readings = json::array();
                for (const auto& r : gates::default_readings(d))
                    readings.push_back({{"output_index", r.output_index}, {"attach_state", r.attach_state}, {"energy", r.energy}});
                fams.push_back({{"descriptor", io::gate_to_json(d)},
                                {"order", gates::family_order(d)},
                                {"input_arity", d.input_arity},
                                {"table", gates::default_table(f)},
                                {"readings", readings}});
            }
            json table1 = json::object();
            for (auto g : {gates::Table1Gate::And, gates::Table1Gate::Or, gates::Table1Gate::Xor, gates::Table1Gate::Nand,
                           gates::Table1Gate::Nor, gates::Table1Gate::Nxor}) {
                const auto p = gates::table1_params(g);
                table1[std::string(gates::table1_gate_name(g))] =
                    p ? json{{"e", p->e}, {"a", p->a}, {"k", p->k}} : json("no solution");
            }
            emit_json(common, {{"families", fams}, {"table1", table1}});
            return kOk;
        };
    });

    // build
    auto* build = app.add_subcommand("build", "print the calculating block for one input");
    add_common(build, true);
    GateArgs build_gate;
    std::string build_input;
    add_gate(build, build_gate);
    build->add_option("--input", build_input, "bit string (011) or comma-separated reals in [0,1]")->required();
    build->callback([&] {
        action = [&] {
            const auto d = resolve_gate(build_gate);
            const SymMatrix h = build_input.find(',') != std::string::npos || build_input.find('.') != std::string::npos
                                    ? gates::build(d, parse_list(build_input))
                                    : gates::build(d, parse_input(build_input, d.input_arity));
            if (common.format == "csv") {
                std::string s;
                for (std::size_t i = 0; i < h.order(); ++i)
                    for (std::size_t j = 0; j < h.order(); ++j) s += io::fmt(h(i, j)) + (j + 1 == h.order() ? "\n" : ",");
                io::write_output(common.out, s);
            } else {
                emit_json(common, {{"input", build_input}, {"matrix", io::matrix_to_json(h)}});
            }
            return kOk;
        };
    });

    // verify
    auto* verify = app.add_subcommand("verify", "check a gate against a truth table");
    add_common(verify, false);
    GateArgs verify_gate;
    ReadingArgs verify_readings;
    std::string verify_table;
    gates::VerifyOptions verify_opt;
    bool verify_lenient = false;
    add_gate(verify, verify_gate);
    add_readings(verify, verify_readings);
    verify->add_option("--table", verify_table, "builtin table name or table JSON (default: the family's table)");
    verify->add_option("--weight-min", verify_opt.weight_min, "reading amplitude threshold")->capture_default_str();
    verify->add_option("--tol", verify_opt.tol, "eigenvalue hit tolerance (eV)")->capture_default_str();
    verify->add_flag("--lenient", verify_lenient, "accept resonant eigenspaces of dimension > 1");
    verify->callback([&] {
        action = [&] {
            const auto d = resolve_gate(verify_gate);
            const auto t = resolve_table(d, verify_table);
            const auto readings = resolve_readings(d, verify_readings);
            verify_opt.strict_kernel = !verify_lenient;
            const auto report = gates::verify_multi_energy(d, t, readings, verify_opt);
            emit_json(common, io::report_to_json(report));
            if (!report.pass) {
                for (const auto& rec : report.records)
                    if (!rec.ok) std::cerr << "input " << bits_of(rec.input, t.input_arity()) << " decided wrongly\n";
            }
            return report.pass ? kOk : kVerifyFailed;
        };
    });

    // charpoly
    auto* charpoly = app.add_subcommand("charpoly", "characteristic polynomial per input and annihilator test");
    add_common(charpoly, false);
    GateArgs cp_gate;
    std::string cp_table;
    double cp_energy = 0.0, cp_zero_tol = 1e-9;
    add_gate(charpoly, cp_gate);
    charpoly->add_option("--table", cp_table, "builtin table name or table JSON (default: the family's table)");
    charpoly->add_option("--energy", cp_energy, "evaluation energy (eV)")->capture_default_str();
    charpoly->add_option("--zero-tol", cp_zero_tol, "zero and proportionality tolerance")->capture_default_str();
    charpoly->callback([&] {
        action = [&] {
            const auto d = resolve_gate(cp_gate);
            emit_json(common, io::charpoly_to_json(gates::charpoly_table(d, resolve_table(d, cp_table), cp_energy, cp_zero_tol)));
            return kOk;
        };
    });

    // scan
    auto* scan = app.add_subcommand("scan", "reading weight over real inputs (alpha, beta) in [0,1]^2");
    add_common(scan, true);
    GateArgs scan_gate;
    ReadingArgs scan_readings;
    int scan_output = 0;
    std::size_t scan_n = 101;
    double scan_tol = 1e-8;
    add_gate(scan, scan_gate);
    add_readings(scan, scan_readings);
    scan->add_option("--output-index", scan_output, "which reading to scan")->capture_default_str();
    scan->add_option("--grid-n", scan_n, "points per axis")->capture_default_str();
    scan->add_option("--tol", scan_tol, "eigenvalue hit tolerance (eV)")->capture_default_str();
    scan->callback([&] {
        action = [&] {
            const auto d = resolve_gate(scan_gate);
            const auto readings = resolve_readings(d, scan_readings);
            const gates::ReadingSpec* r = nullptr;
            for (const auto& rs : readings)
                if (rs.output_index == scan_output) r = &rs;
            if (!r) throw Error(ErrorCode::BadInput, "no reading for that output index");
            const auto f = gates::robustness_scan(d, *r, scan_n, scan_tol);
            if (common.format == "csv")
                io::write_output(common.out, io::scan_csv(f));
            else
                emit_json(common, {{"alpha", f.alpha}, {"weight_sq", f.value}, {"n", f.n}});
            return kOk;
        };
    });

    // merge
    auto* merge = app.add_subcommand("merge", "merge two gates sharing an upper-left block");
    add_common(merge, false);
    GateArgs merge_a, merge_b;
    std::size_t merge_shared = 0;
    merge->add_option("--gate1", merge_a.gate, "first gate (JSON file or family name)")->required();
    merge->add_option("--gate2", merge_b.gate, "second gate (JSON file or family name)")->required();
    merge->add_option("--shared", merge_shared, "size of the shared block")->required();
    merge->callback([&] {
        action = [&] {
            emit_json(common, io::gate_to_json(gates::merge(resolve_gate(merge_a), resolve_gate(merge_b), merge_shared)));
            return kOk;
        };
    });

    // solve-ha
    auto* solve_ha = app.add_subcommand("solve-ha", "closed-form half-adder family for a 4x4 input block");
    add_common(solve_ha, false);
    std::string ha_c00;
    schur::HalfAdderParams ha_params;
    solve_ha->add_option("--c00", ha_c00, "JSON 4x4 matrix C(0,0)")->required();
    solve_ha->add_option("--v1", ha_params.v1, "free parameter v1")->capture_default_str();
    solve_ha->add_option("--v3", ha_params.v3, "free parameter v3")->capture_default_str();
    solve_ha->add_option("--u1", ha_params.u1, "free parameter u1")->capture_default_str();
    solve_ha->add_option("--r", ha_params.r, "scale r")->capture_default_str();
    solve_ha->add_option("--s", ha_params.s, "scale s")->capture_default_str();
    solve_ha->add_option("--branch", ha_params.branch, "root branch 0..3")->capture_default_str();
    solve_ha->callback([&] {
        action = [&] {
            const auto c00 = io::sym_matrix_from_json(json::parse(io::read_file(ha_c00)));
            emit_json(common, io::partition_to_json(schur::solve_half_adder(c00, ha_params)));
            return kOk;
        };
    });

    // solve-fa
    auto* solve_fa = app.add_subcommand("solve-fa", "numerical full-adder solver; one JSONL record per run");
    add_common(solve_fa, false);
    std::string fa_c000;
    schur::FullAdderOptions fa_opt;
    std::string fa_x0;
    int fa_branch = -1;
    solve_fa->add_option("--c000", fa_c000, "JSON 6x6 matrix C(0,0,0) (default: upper block of full_adder8_typ)");
    solve_fa->add_option("--seeds", fa_opt.seeds, "random starting points")->capture_default_str();
    solve_fa->add_option("--seed-range", fa_opt.seed_range, "starting points uniform in [-r, r]")->capture_default_str();
    solve_fa->add_option("--max-iterations", fa_opt.max_iterations, "Newton iterations")->capture_default_str();
    solve_fa->add_option("--tol", fa_opt.tol, "reduced residual tolerance")->capture_default_str();
    solve_fa->add_option("--x0", fa_x0, "single start v1,v3,v5 instead of random seeds");
    solve_fa->add_option("--branch", fa_branch, "with --x0: branch 0..7 (default all)");
    solve_fa->callback([&] {
        action = [&] {
            SymMatrix c000;
            if (fa_c000.empty()) {
                const SymMatrix h = gates::build(gates::make_full_adder8_typ(), 0u);
                c000 = SymMatrix(6);
                for (std::size_t i = 0; i < 6; ++i)
                    for (std::size_t j = i; j < 6; ++j) c000.set(i, j, h(i, j));
            } else {
                c000 = io::sym_matrix_from_json(json::parse(io::read_file(fa_c000)));
            }
            fa_opt.rng_seed = common.seed;
            std::vector<schur::FullAdderCandidate> runs;
            if (!fa_x0.empty()) {
                const auto x0 = parse_list(fa_x0);
                for (int b = 0; b < 8; ++b)
                    if (fa_branch < 0 || fa_branch == b) runs.push_back(schur::solve_full_adder_from(c000, x0, b, fa_opt));
            } else {
                runs = schur::solve_full_adder(c000, fa_opt);
            }
            std::string log;
            int valid = 0;
            for (const auto& c : runs) {
                log += io::candidate_to_json(c).dump() + "\n";
                if (c.status == schur::CandidateStatus::Valid) ++valid;
            }
            io::write_output(common.out, log);
            std::cerr << valid << " of " << runs.size() << " runs validated\n";
            return valid > 0 ? kOk : kNoConvergence;
        };
    });

    // count
    auto* count = app.add_subcommand("count", "equation and variable tally for the n-bit adder");
    add_common(count, false);
    int count_n = 2;
    count->add_option("--n", count_n, "adder width")->capture_default_str();
    count->callback([&] {
        action = [&] {
            emit_json(common, io::count_to_json(schur::count_constraints(count_n)));
            return kOk;
        };
    });

    // gaps
    auto* gaps = app.add_subcommand("gaps", "root-separation metrics of a two-input gate");
    add_common(gaps, false);
    GateArgs gaps_gate;
    add_gate(gaps, gaps_gate);
    gaps->callback([&] {
        action = [&] {
            emit_json(common, io::gaps_to_json(multiband::gap_metrics(resolve_gate(gaps_gate))));
            return kOk;
        };
    });

    // intervals
    auto* intervals = app.add_subcommand("intervals", "unambiguous reading intervals for one output");
    add_common(intervals, true);
    GateArgs iv_gate;
    std::string iv_table;
    multiband::IntervalSearch iv_search;
    std::optional<std::size_t> iv_attach;
    add_gate(intervals, iv_gate);
    intervals->add_option("--table", iv_table, "builtin table name or table JSON (default: the family's table)");
    intervals->add_option("--output-index", iv_search.output_index, "output bit")->capture_default_str();
    intervals->add_option("--attach", iv_attach, "attach state (default: the family's reading state)");
    intervals->add_option("--e-min", iv_search.e_min, "scan start (eV)")->capture_default_str();
    intervals->add_option("--e-max", iv_search.e_max, "scan end (eV)")->capture_default_str();
    intervals->add_option("--grid-n", iv_search.grid_n, "scan points")->capture_default_str();
    intervals->add_option("--weight-min", iv_search.weight_min, "reading amplitude threshold")->capture_default_str();
    intervals->callback([&] {
        action = [&] {
            const auto d = resolve_gate(iv_gate);
            if (iv_attach) {
                iv_search.attach_state = *iv_attach;
            } else {
                bool found = false;
                for (const auto& r : gates::default_readings(d))
                    if (r.output_index == iv_search.output_index) {
                        iv_search.attach_state = r.attach_state;
                        found = true;
                    }
                if (!found) throw Error(ErrorCode::BadInput, "pass --attach");
            }
            const auto iv = multiband::find_intervals(d, resolve_table(d, iv_table), iv_search);
            if (common.format == "csv")
                io::write_output(common.out, io::intervals_csv(iv));
            else
                emit_json(common, io::intervals_to_json(iv));
            return kOk;
        };
    });

    // optimize-ha
    auto* optimize = app.add_subcommand("optimize-ha", "scan e of the 3x3 multi-energy half adder");
    add_common(optimize, true);
    double opt_lo = -1.0, opt_hi = 1.0;
    std::size_t opt_n = 201;
    optimize->add_option("--e-min", opt_lo, "grid start")->capture_default_str();
    optimize->add_option("--e-max", opt_hi, "grid end")->capture_default_str();
    optimize->add_option("--grid-n", opt_n, "grid points")->capture_default_str();
    optimize->callback([&] {
        action = [&] {
            const auto r = multiband::optimize_me_half_adder(multiband::linspace(opt_lo, opt_hi, opt_n));
            if (common.format == "csv")
                io::write_output(common.out, io::optimization_csv(r));
            else
                emit_json(common, io::optimization_to_json(r));
            return kOk;
        };
    });

    // evolve
    auto* evolve = app.add_subcommand("evolve", "population dynamics of the gate with its reading blocks");
    add_common(evolve, true);
    GateArgs ev_gate;
    ReadingArgs ev_readings;
    std::string ev_input;
    std::size_t ev_pair = 0, ev_samples = 2001;
    std::optional<std::size_t> ev_initial;
    double ev_tmax = 20.0;
    add_gate(evolve, ev_gate);
    add_readings(evolve, ev_readings);
    evolve->add_option("--input", ev_input, "input bit string")->required();
    evolve->add_option("--pair", ev_pair, "start in phi_a of this reading pair")->capture_default_str();
    evolve->add_option("--initial", ev_initial, "start in this basis state instead");
    evolve->add_option("--t-max", ev_tmax, "duration (ps)")->capture_default_str();
    evolve->add_option("--samples", ev_samples, "time samples")->capture_default_str();
    evolve->callback([&] {
        action = [&] {
            const auto d = resolve_gate(ev_gate);
            const auto readings = resolve_readings(d, ev_readings);
            const auto sys = dynamics::assemble_full(gates::build(d, parse_input(ev_input, d.input_arity)), readings);
            if (!ev_initial && ev_pair >= sys.pairs.size()) throw Error(ErrorCode::BadInput, "pair index out of range");
            const std::size_t initial = ev_initial ? *ev_initial : sys.pairs[ev_pair].phi_a;
            const auto series = dynamics::evolve(sys, initial, ev_tmax, ev_samples);
            json meta{{"input", ev_input}, {"initial_state", initial}, {"gate", io::gate_to_json(d)}, {"pairs", json::array()}};
            for (const auto& p : sys.pairs)
                meta["pairs"].push_back({{"output_index", p.output_index},
                                         {"attach_state", p.attach_state},
                                         {"phi_a", p.phi_a},
                                         {"phi_b", p.phi_b},
                                         {"epsilon", p.epsilon},
                                         {"energy", p.energy}});
            if (common.format == "csv") {
                io::write_output(common.out, io::series_csv(series));
                if (common.out != "-") io::write_output(common.out + ".json", meta.dump() + "\n");
            } else {
                meta["times_ps"] = series.times_ps;
                meta["populations"] = series.populations;
                emit_json(common, meta);
            }
            return kOk;
        };
    });

    // classify
    auto* classify = app.add_subcommand("classify", "decide outputs from pointer transfer for every input");
    add_common(classify, false);
    GateArgs cl_gate;
    ReadingArgs cl_readings;
    std::string cl_table;
    double cl_tmax = 20.0, cl_threshold = 0.5;
    std::size_t cl_samples = 4001;
    bool cl_isolated = false;
    add_gate(classify, cl_gate);
    add_readings(classify, cl_readings);
    classify->add_option("--table", cl_table, "builtin table name or table JSON (default: the family's table)");
    classify->add_option("--t-max", cl_tmax, "observation window (ps)")->capture_default_str();
    classify->add_option("--threshold", cl_threshold, "transfer threshold for output 1")->capture_default_str();
    classify->add_option("--samples", cl_samples, "time samples")->capture_default_str();
    classify->add_flag("--isolated", cl_isolated, "measure each output with only its own reading block attached");
    classify->callback([&] {
        action = [&] {
            const auto d = resolve_gate(cl_gate);
            const auto t = resolve_table(d, cl_table);
            const auto readings = resolve_readings(d, cl_readings);
            json records = json::array();
            bool pass = true;
            for (std::uint32_t idx = 0; idx < t.row_count(); ++idx) {
                const auto sys = dynamics::assemble_full(gates::build(d, idx), readings);
                const auto c = dynamics::classify(sys, cl_tmax, cl_threshold, cl_samples, cl_isolated);
                std::string decided, expected;
                for (int j = 0; j < t.output_arity(); ++j) {
                    decided += static_cast<std::size_t>(j) < c.bits.size() ? static_cast<char>('0' + c.bits[j]) : '0';
                    expected += static_cast<char>('0' + t.output_bit(idx, j));
                }
                pass = pass && decided == expected;
                records.push_back({{"input", bits_of(idx, t.input_arity())},
                                   {"decided", decided},
                                   {"expected", expected},
                                   {"max_transfer", c.max_transfer}});
            }
            emit_json(common, {{"pass", pass}, {"records", records}});
            return pass ? kOk : kVerifyFailed;
        };
    });

    // transmission
    auto* trans = app.add_subcommand("transmission", "lead-to-lead transmission spectrum per input");
    add_common(trans, true);
    GateArgs tr_gate;
    std::string tr_input;
    std::optional<std::size_t> tr_attach;
    transport::LeadModel lead;
    double tr_lo = -3.0, tr_hi = 3.0;
    std::size_t tr_n = 2001;
    double tr_peaks = 0.5;
    add_gate(trans, tr_gate);
    trans->add_option("--input", tr_input, "input bit string (default: every input)");
    trans->add_option("--attach", tr_attach, "attach state of both leads (default: the family's reading state)");
    trans->add_option("--hopping", lead.h, "lead hopping (eV)")->capture_default_str();
    trans->add_option("--onsite", lead.onsite, "lead onsite energy (eV)")->capture_default_str();
    trans->add_option("--epsilon", lead.epsilon, "lead coupling (eV)")->capture_default_str();
    trans->add_option("--e-min", tr_lo, "grid start (eV)")->capture_default_str();
    trans->add_option("--e-max", tr_hi, "grid end (eV)")->capture_default_str();
    trans->add_option("--grid-n", tr_n, "grid points")->capture_default_str();
    trans->add_option("--peak-min", tr_peaks, "T threshold for reported peaks (json)")->capture_default_str();
    trans->callback([&] {
        action = [&] {
            const auto d = resolve_gate(tr_gate);
            std::size_t attach = 0;
            if (tr_attach) {
                attach = *tr_attach;
            } else {
                const auto rd = gates::default_readings(d);
                if (rd.empty()) throw Error(ErrorCode::BadInput, "pass --attach");
                attach = rd.front().attach_state;
            }
            std::vector<std::uint32_t> inputs;
            if (!tr_input.empty())
                inputs.push_back(parse_input(tr_input, d.input_arity));
            else
                for (std::uint32_t i = 0; i < (std::uint32_t{1} << d.input_arity); ++i) inputs.push_back(i);
            const auto grid = multiband::linspace(tr_lo, tr_hi, tr_n);
            const auto hash = io::gate_hash(d);
            json all = json::array();
            std::string joined;
            for (auto idx : inputs) {
                const SymMatrix h0 = gates::build(d, idx);
                const auto ts = transport::transmission(h0, attach, lead, grid);
                const auto bits = bits_of(idx, d.input_arity);
                if (common.format == "csv") {
                    const auto csv = io::spectrum_csv(ts, {lead.h, lead.epsilon, attach, hash, bits});
                    if (common.out == "-")
                        joined += csv;
                    else
                        io::write_output(inputs.size() == 1 ? common.out : common.out + "_" + bits + ".csv", csv);
                } else {
                    const auto peaks = transport::resonance_peaks(
                        ts, tr_peaks, [&](double e) { return transport::transmission_at(h0, attach, lead, e); });
                    all.push_back({{"input", bits}, {"peaks", peaks}, {"energies", ts.energies}, {"T", ts.T}});
                }
            }
            if (common.format == "csv") {
                if (common.out == "-") io::write_output("-", joined);
            } else {
                emit_json(common, {{"h", lead.h}, {"epsilon", lead.epsilon}, {"attach_state", attach}, {"gate", hash}, {"spectra", all}});
            }
            return kOk;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }
    try {
        return action ? action() : kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}

int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"qhc"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

} // namespace qhc::cli
