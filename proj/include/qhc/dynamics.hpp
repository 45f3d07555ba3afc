#pragma once

#include <span>
#include <vector>

#include "qhc/gates.hpp"
#include "qhc/linalg.hpp"

namespace qhc::dynamics {

/// eV·fs
inline constexpr double kHbar = 0.6582119569;
inline constexpr double kResonanceTol = 1e-6;

struct PointerPair {
    std::size_t phi_a = 0;
    std::size_t phi_b = 0;
    int output_index = 0;
    std::size_t attach_state = 0;
    double epsilon = 0.0;
    double energy = 0.0;
};

/// Calculating block first, then (φa, φb) for each reading in order.
struct AssembledSystem {
    SymMatrix H;
    std::size_t calc_order = 0;
    std::vector<PointerPair> pairs;
};

/// Throws Error(BadInput) for an attach state outside H0 or ε ≤ 0.
AssembledSystem assemble_full(const SymMatrix& h0, std::span<const gates::ReadingSpec> readings);

/// Exact propagator e^{−iHt/ℏ} through one diagonalization.
class Propagator {
public:
    explicit Propagator(const SymMatrix& h);

    /// |⟨j|ψ(t)⟩|² for all j, starting from basis state `initial`; t in ps.
    Vector populations(std::size_t initial, double t_ps) const;

private:
    Spectrum spectrum_;
};

struct PopulationSeries {
    std::vector<double> times_ps;
    std::vector<Vector> populations; ///< [sample][state]

    double total(std::size_t sample) const;
};

/// Samples t = 0 … t_max uniformly (n_samples ≥ 2).
PopulationSeries evolve(const AssembledSystem& sys, std::size_t initial_state, double t_max_ps, std::size_t n_samples);

struct SecularFrequency {
    double omega = 0.0; ///< rad/ps
    bool resonant = false;
    double c_res = 0.0; ///< attach amplitude of the resonant eigenspace
    std::vector<double> contributing; ///< eigenvalues entering the formula

    /// Time of the first full transfer φa → φb, π/Ω, in ps.
    double first_maximum_ps() const;
};

/// Off resonance: ℏΩ/2 = ε²|Σ cₙ²/(E−λₙ)|. On resonance (an eigenvalue within
/// tol carrying attach weight): Ω = √2·ε·|c_res|/ℏ.
SecularFrequency secular_frequency(const SymMatrix& h0, const gates::ReadingSpec& reading,
                                   double resonance_tol = kResonanceTol);

/// Largest φb population over n_samples uniform times in [0, t_max] after
/// preparing φa of the given pair.
double max_transfer(const AssembledSystem& sys, std::size_t pair, double t_max_ps, std::size_t n_samples = 4001);

/// Time of the largest pair transfer on a uniform grid over [0, t_max],
/// refined by a parabola through its neighbours. Off resonance the transfer
/// carries a fast ripple of period ~ℏ/|E−λ|, so the grid must resolve it
/// and t_max should stay below the second full transfer.
double transfer_peak_time_ps(const AssembledSystem& sys, std::size_t pair, double t_max_ps,
                             std::size_t n_samples = 4001);

struct Classification {
    std::vector<int> bits;            ///< indexed by output_index
    std::vector<double> max_transfer; ///< per pair
};

/// Subsystem of the calculating block and pair k alone.
AssembledSystem isolate_pair(const AssembledSystem& sys, std::size_t pair);

/// Bit j = 1 iff the pair-j transfer exceeds threshold within t_max. With
/// `isolated`, each pair is simulated with the other reading blocks removed.
Classification classify(const AssembledSystem& sys, double t_max_ps, double threshold, std::size_t n_samples = 4001,
                        bool isolated = false);

} // namespace qhc::dynamics
