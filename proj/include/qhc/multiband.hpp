#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qhc/gates.hpp"
#include "qhc/linalg.hpp"
#include "qhc/logic.hpp"

namespace qhc::multiband {

/// Sorted eigenvalues per input index.
using RootSets = std::vector<Vector>;

RootSets root_sets(const gates::GateDescriptor& d);

struct GapMetrics {
    double delta1 = 0.0; ///< r₀₁ against r₀₀ ∪ r₁₁
    double delta2 = 0.0; ///< r₁₁ against r₀₀ ∪ r₀₁
    double xor_energy = 0.0; ///< first root of r₀₁ attaining Δ₁
    double and_energy = 0.0; ///< first root of r₁₁ attaining Δ₂
};

/// Two-input gates only; throws Error(BadInput) otherwise.
GapMetrics gap_metrics(const gates::GateDescriptor& d);

struct ReadingInterval {
    int output_index = 0;
    double lo = 0.0;
    double hi = 0.0;
    std::vector<std::uint32_t> witnesses; ///< output-1 inputs resonating inside
    std::size_t attach_state = 0;
    double min_weight = 0.0; ///< smallest witness squared weight

    double midpoint() const { return 0.5 * (lo + hi); }
    double width() const { return hi - lo; }
};

struct IntervalSearch {
    int output_index = 0;
    std::size_t attach_state = 0;
    double e_min = -3.0;
    double e_max = 3.0;
    std::size_t grid_n = 2001;
    double weight_min = 0.05; ///< amplitude threshold, compared as squared weight > weight_min²
};

/// Energies resolved by the scan, as a per-grid-point validity mask.
struct ScanMask {
    std::vector<double> energies;
    std::vector<bool> valid;
};

/// Grid validity: the nearest relevant eigenvalue belongs to an output-1
/// input and the output-0-free gap around the point holds a resonance of
/// every output-1 input inside the range.
ScanMask scan_validity(const gates::GateDescriptor& d, const logic::TruthTable& t, const IntervalSearch& s);

/// Maximal valid runs, widest first. Endpoints are midpoints between the
/// bounding output-0 and output-1 eigenvalues, clipped to the range.
/// Throws Error(NoInterval) when the scan finds nothing.
std::vector<ReadingInterval> find_intervals(const gates::GateDescriptor& d, const logic::TruthTable& t,
                                            const IntervalSearch& s);

struct OptimizationPoint {
    double e = 0.0;
    GapMetrics gaps;
    double and_weight = 0.0; ///< squared weight on state 2 at the AND resonance
    double xor_weight = 0.0;
    double deviation = 0.0;  ///< max |weight − ½|
};

struct OptimizationResult {
    std::size_t best_index = 0;
    double best_e = 0.0;
    std::vector<double> and_energies; ///< every root of r₁₁ attaining Δ₂
    std::vector<double> xor_energies;
    std::vector<OptimizationPoint> points;

    const OptimizationPoint& best() const { return points[best_index]; }
};

/// Lexicographic choice over the grid: the smallest deviation of both
/// squared reading weights from ½ (deviations ≤ 1e-9 count as zero), then the
/// largest min(Δ₁, Δ₂); ties keep the earlier grid point.
OptimizationResult optimize_me_half_adder(const std::vector<double>& e_grid);

std::vector<double> linspace(double lo, double hi, std::size_t n);

} // namespace qhc::multiband
