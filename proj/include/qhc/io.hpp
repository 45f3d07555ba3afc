#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qhc/dynamics.hpp"
#include "qhc/gates.hpp"
#include "qhc/logic.hpp"
#include "qhc/multiband.hpp"
#include "qhc/schur.hpp"
#include "qhc/transport.hpp"

namespace qhc::io {

using json = nlohmann::json;

std::string read_file(const std::string& path);
/// "-" or empty writes to stdout.
void write_output(const std::string& path, std::string_view content);

/// Shortest round-trip decimal form; identical values always print identically.
std::string fmt(double v);

json matrix_to_json(const SymMatrix& m);
json matrix_to_json(const Matrix& m);
SymMatrix sym_matrix_from_json(const json& j);

/// {"k":2,"l":2,"rows":{"00":"00","01":"10",...}}
json table_to_json(const logic::TruthTable& t);
/// Throws Error(BadInput) on missing rows or malformed bit strings.
logic::TruthTable table_from_json(const json& j);
/// A builtin name or a path to a table JSON file.
logic::TruthTable load_table(const std::string& name_or_path);

/// Catalog families: {"family":..,"params":{..}}; custom: {"family":"custom",
/// "order":n,"base":[[..]],"input_positions":[{"var":"alpha","i":0,"j":1},..]}.
json gate_to_json(const gates::GateDescriptor& d);
gates::GateDescriptor gate_from_json(const json& j);
gates::GateDescriptor load_gate(const std::string& path);
/// FNV-1a of the canonical descriptor JSON, 16 hex digits.
std::string gate_hash(const gates::GateDescriptor& d);

json report_to_json(const gates::VerificationReport& r);
json charpoly_to_json(const gates::CharpolyTable& c);
std::string scan_csv(const gates::ScanField& f);

json partition_to_json(const schur::BlockPartition& p);
json candidate_to_json(const schur::FullAdderCandidate& c);
json count_to_json(const schur::ConstraintCount& c);

json gaps_to_json(const multiband::GapMetrics& g);
json intervals_to_json(std::span<const multiband::ReadingInterval> iv);
std::string intervals_csv(std::span<const multiband::ReadingInterval> iv);
json optimization_to_json(const multiband::OptimizationResult& r);
std::string optimization_csv(const multiband::OptimizationResult& r);

/// time_ps, pop_state_0..N
std::string series_csv(const dynamics::PopulationSeries& s);

struct SpectrumHeader {
    double h = 0.0;
    double epsilon = 0.0;
    std::size_t attach_state = 0;
    std::string gate_hash;
    std::string input_bits;
};
/// '#' metadata lines, then energy_eV,T.
std::string spectrum_csv(const transport::TransmissionSpectrum& ts, const SpectrumHeader& h);

} // namespace qhc::io
