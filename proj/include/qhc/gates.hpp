#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qhc/linalg.hpp"
#include "qhc/logic.hpp"

namespace qhc::gates {

enum class Family { generic3, and4, xor4, half_adder5, full_adder8_typ, me_half_adder3, me_full_adder5, custom };

std::string_view family_name(Family f);
/// Throws Error(BadInput) for an unknown name.
Family parse_family(std::string_view name);
std::vector<Family> catalog_families();

/// One input-dependent entry: H(i,j) = H(j,i) += coeff · x[var].
struct InputPosition {
    int var = 0;
    std::size_t i = 0;
    std::size_t j = 0;
    double coeff = 1.0;

    friend bool operator==(const InputPosition&, const InputPosition&) = default;
};

/// H(x) = base + Σ coeff·x_var on the listed positions.
struct LinearFamily {
    SymMatrix base;
    std::vector<InputPosition> positions;
    int input_arity = 0;
};

struct GateDescriptor {
    Family family = Family::generic3;
    std::map<std::string, double> params;
    int input_arity = 2;
    std::optional<LinearFamily> custom;
};

GateDescriptor make_generic3(double e, double a, double k);
GateDescriptor make_and4(double x);
GateDescriptor make_xor4(double x);
GateDescriptor make_half_adder5(double x);
GateDescriptor make_full_adder8_typ();
GateDescriptor make_me_half_adder3(double e);
GateDescriptor make_me_full_adder5(double eta);
GateDescriptor make_custom(LinearFamily f);

/// Descriptor for a catalog family; missing parameters take documented
/// defaults (x = 1, k = 1, e = 0, a = 0, η = √15/4).
GateDescriptor catalog_gate(Family f, const std::map<std::string, double>& params = {});

std::size_t family_order(const GateDescriptor& d);

/// Base matrix and input positions of any family. Throws Error(BadParams)
/// when the descriptor is missing a parameter or violates its invariants.
LinearFamily linear_form(const GateDescriptor& d);

/// Inputs may be real numbers in [0,1] (robustness scans) or Boolean.
SymMatrix build(const GateDescriptor& d, std::span<const double> input);
SymMatrix build(const GateDescriptor& d, std::uint32_t input_index);

enum class Table1Gate { And, Or, Xor, Nand, Nor, Nxor };

struct Table1Params {
    double e = 0.0;
    double a = 0.0;
    double k = 1.0;
};

/// Printed parameter column; std::nullopt for XOR ("no solution"). The free
/// a of NXOR is fixed to 0.
std::optional<Table1Params> table1_params(Table1Gate g, double k = 1.0);
/// Printed P(0) column evaluated on a Boolean input; nullopt for XOR.
std::optional<double> table1_polynomial(Table1Gate g, double k, int alpha, int beta);
Table1Gate parse_table1_gate(std::string_view name);
std::string_view table1_gate_name(Table1Gate g);

/// H = V·H₁·Vᵀ + W·H₂·Wᵀ − (shared block counted twice). States of g2 beyond
/// the shared block are appended after those of g1.
GateDescriptor merge(const GateDescriptor& g1, const GateDescriptor& g2, std::size_t shared_block_size);

struct ReadingSpec {
    int output_index = 0;
    std::size_t attach_state = 0;
    double energy = 0.0;
    double epsilon = 1e-3;
};

/// The reading layout each catalog family was designed for (empty for
/// generic3 and custom): attach states and energies per output.
std::vector<ReadingSpec> default_readings(const GateDescriptor& d, double epsilon = 1e-3);
/// Builtin truth-table name the family realizes, empty when none.
std::string default_table(Family f);

struct ReadingRecord {
    int output_index = 0;
    double energy = 0.0;
    bool hit = false;
    std::size_t kernel_dimension = 0;
    double weight = 0.0;    ///< projector amplitude √⟨s|P|s⟩ on the attach state
    double weight_sq = 0.0; ///< ⟨s|P|s⟩
    int decided = 0;
    int expected = 0;
};

struct InputRecord {
    std::uint32_t input = 0;
    logic::Bits bits;
    std::vector<ReadingRecord> readings;
    bool ok = true;
};

struct VerificationReport {
    std::vector<InputRecord> records;
    bool pass = true;
};

struct VerifyOptions {
    double weight_min = 0.05; ///< amplitude threshold; decision uses weight_sq > weight_min²
    double tol = 1e-8;
    /// When set, a resonant eigenspace of dimension > 1 throws AmbiguousKernel.
    bool strict_kernel = true;
};

using HamiltonianFn = std::function<SymMatrix(std::uint32_t input_index)>;

/// Decision rule shared by both verification modes, for any input-indexed family.
VerificationReport verify_family(const HamiltonianFn& h, const logic::TruthTable& t,
                                 std::span<const ReadingSpec> readings, const VerifyOptions& opt = {});

/// Throws Error(BadInput) unless all readings share one energy.
VerificationReport verify_fixed_energy(const GateDescriptor& d, const logic::TruthTable& t,
                                       std::span<const ReadingSpec> readings, const VerifyOptions& opt = {});
VerificationReport verify_multi_energy(const GateDescriptor& d, const logic::TruthTable& t,
                                       std::span<const ReadingSpec> readings, const VerifyOptions& opt = {});

struct CharpolyTable {
    double energy = 0.0;
    std::vector<double> values; ///< indexed by input
    std::vector<double> annihilator;
    bool proportional = false;
    double constant = 0.0;
};

/// zero_tol bounds |P| on inputs where the annihilator vanishes and the
/// relative spread of P/annihilator elsewhere.
CharpolyTable charpoly_table(const GateDescriptor& d, const logic::TruthTable& t, double energy,
                             double zero_tol = 1e-9);

struct ScanField {
    std::size_t n = 0;
    std::vector<double> alpha; ///< grid coordinates, shared by both axes
    std::vector<double> value; ///< row-major [iα·n + iβ]

    double at(std::size_t ia, std::size_t ib) const { return value[ia * n + ib]; }
};

ScanField robustness_scan(const GateDescriptor& d, const ReadingSpec& reading, std::size_t grid_n,
                          double tol = 1e-8);

} // namespace qhc::gates
