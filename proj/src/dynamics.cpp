#include "qhc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "qhc/error.hpp"

namespace qhc::dynamics {

namespace {

constexpr double kFsPerPs = 1000.0;
constexpr double kWeightFloor = 1e-12;

} // namespace

AssembledSystem assemble_full(const SymMatrix& h0, std::span<const gates::ReadingSpec> readings) {
    const std::size_t n = h0.order();
    AssembledSystem sys;
    sys.calc_order = n;
    sys.H = SymMatrix(n + 2 * readings.size());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) sys.H.set(i, j, h0(i, j));
    for (std::size_t r = 0; r < readings.size(); ++r) {
        const auto& rd = readings[r];
        if (rd.attach_state >= n) throw Error(ErrorCode::BadInput, "attach state outside the calculating block");
        if (!(rd.epsilon > 0.0)) throw Error(ErrorCode::BadInput, "pointer coupling must be positive");
        PointerPair p{n + 2 * r, n + 2 * r + 1, rd.output_index, rd.attach_state, rd.epsilon, rd.energy};
        for (auto phi : {p.phi_a, p.phi_b}) {
            sys.H.set(phi, phi, rd.energy);
            sys.H.set(phi, rd.attach_state, rd.epsilon);
        }
        sys.pairs.push_back(p);
    }
    return sys;
}

Propagator::Propagator(const SymMatrix& h) : spectrum_(eig_sym(h)) {}

Vector Propagator::populations(std::size_t initial, double t_ps) const {
    const std::size_t n = spectrum_.size();
    if (initial >= n) throw Error(ErrorCode::BadInput, "initial state outside the system");
    const double t_fs = t_ps * kFsPerPs;
    std::vector<std::complex<double>> coeff(n);
    for (std::size_t k = 0; k < n; ++k)
        coeff[k] = std::polar(spectrum_.component(initial, k), -spectrum_.eigenvalues[k] * t_fs / kHbar);
    Vector pop(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::complex<double> amp = 0.0;
        for (std::size_t k = 0; k < n; ++k) amp += spectrum_.component(j, k) * coeff[k];
        pop[j] = std::norm(amp);
    }
    return pop;
}

double PopulationSeries::total(std::size_t sample) const {
    double s = 0.0;
    for (double p : populations.at(sample)) s += p;
    return s;
}

PopulationSeries evolve(const AssembledSystem& sys, std::size_t initial_state, double t_max_ps, std::size_t n_samples) {
    if (!(t_max_ps > 0.0)) throw Error(ErrorCode::BadInput, "t_max must be positive");
    if (n_samples < 2) throw Error(ErrorCode::BadInput, "need at least two samples");
    const Propagator prop(sys.H);
    PopulationSeries series;
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double t = t_max_ps * static_cast<double>(i) / static_cast<double>(n_samples - 1);
        series.times_ps.push_back(t);
        series.populations.push_back(prop.populations(initial_state, t));
    }
    return series;
}

double SecularFrequency::first_maximum_ps() const {
    return omega > 0.0 ? std::numbers::pi / omega : std::numeric_limits<double>::infinity();
}

SecularFrequency secular_frequency(const SymMatrix& h0, const gates::ReadingSpec& reading, double resonance_tol) {
    if (!(reading.epsilon > 0.0)) throw Error(ErrorCode::BadInput, "pointer coupling must be positive");
    if (reading.attach_state >= h0.order()) throw Error(ErrorCode::BadInput, "attach state outside the matrix");
    const Spectrum s = eig_sym(h0);
    const double eps = reading.epsilon;
    SecularFrequency f;

    double resonant_weight = 0.0;
    std::vector<double> resonant_levels;
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double c2 = s.component(reading.attach_state, k) * s.component(reading.attach_state, k);
        if (std::abs(reading.energy - s.eigenvalues[k]) <= resonance_tol) {
            resonant_weight += c2;
            resonant_levels.push_back(s.eigenvalues[k]);
        }
    }
    if (resonant_weight > kWeightFloor) {
        f.resonant = true;
        f.c_res = std::sqrt(resonant_weight);
        f.contributing = resonant_levels;
        f.omega = std::numbers::sqrt2 * eps * f.c_res / kHbar * kFsPerPs;
        return f;
    }

    double sum = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double c2 = s.component(reading.attach_state, k) * s.component(reading.attach_state, k);
        if (c2 <= kWeightFloor) continue;
        const double detuning = reading.energy - s.eigenvalues[k];
        if (std::abs(detuning) <= resonance_tol) continue; // decoupled level at the reading energy
        sum += c2 / detuning;
        f.contributing.push_back(s.eigenvalues[k]);
    }
    f.omega = 2.0 * eps * eps * std::abs(sum) / kHbar * kFsPerPs;
    return f;
}

double max_transfer(const AssembledSystem& sys, std::size_t pair, double t_max_ps, std::size_t n_samples) {
    if (pair >= sys.pairs.size()) throw Error(ErrorCode::BadInput, "pair index out of range");
    if (!(t_max_ps > 0.0) || n_samples < 2) throw Error(ErrorCode::BadInput, "bad time grid");
    const Propagator prop(sys.H);
    const auto& p = sys.pairs[pair];
    double best = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double t = t_max_ps * static_cast<double>(i) / static_cast<double>(n_samples - 1);
        best = std::max(best, prop.populations(p.phi_a, t)[p.phi_b]);
    }
    return best;
}

double transfer_peak_time_ps(const AssembledSystem& sys, std::size_t pair, double t_max_ps, std::size_t n_samples) {
    if (pair >= sys.pairs.size()) throw Error(ErrorCode::BadInput, "pair index out of range");
    if (!(t_max_ps > 0.0) || n_samples < 3) throw Error(ErrorCode::BadInput, "bad time grid");
    const Propagator prop(sys.H);
    const auto& p = sys.pairs[pair];
    const double dt = t_max_ps / static_cast<double>(n_samples - 1);
    Vector v(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) v[i] = prop.populations(p.phi_a, dt * static_cast<double>(i))[p.phi_b];
    const auto best = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
    if (best == 0 || best + 1 == n_samples) return dt * static_cast<double>(best);
    const double denom = v[best - 1] - 2.0 * v[best] + v[best + 1];
    const double shift = denom != 0.0 ? 0.5 * (v[best - 1] - v[best + 1]) / denom : 0.0;
    return dt * (static_cast<double>(best) + shift);
}

AssembledSystem isolate_pair(const AssembledSystem& sys, std::size_t pair) {
    if (pair >= sys.pairs.size()) throw Error(ErrorCode::BadInput, "pair index out of range");
    const std::size_t n = sys.calc_order;
    const PointerPair& p = sys.pairs[pair];
    std::vector<std::size_t> keep(n);
    for (std::size_t i = 0; i < n; ++i) keep[i] = i;
    keep.push_back(p.phi_a);
    keep.push_back(p.phi_b);
    AssembledSystem out;
    out.calc_order = n;
    out.H = SymMatrix(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (std::size_t j = i; j < keep.size(); ++j) out.H.set(i, j, sys.H(keep[i], keep[j]));
    PointerPair q = p;
    q.phi_a = n;
    q.phi_b = n + 1;
    out.pairs.push_back(q);
    return out;
}

Classification classify(const AssembledSystem& sys, double t_max_ps, double threshold, std::size_t n_samples,
                        bool isolated) {
    if (!(threshold > 0.0 && threshold < 1.0)) throw Error(ErrorCode::BadInput, "threshold must lie in (0, 1)");
    Classification c;
    int outputs = 0;
    for (const auto& p : sys.pairs) outputs = std::max(outputs, p.output_index + 1);
    c.bits.assign(static_cast<std::size_t>(outputs), 0);
    for (std::size_t k = 0; k < sys.pairs.size(); ++k) {
        const double m = isolated ? max_transfer(isolate_pair(sys, k), 0, t_max_ps, n_samples)
                                  : max_transfer(sys, k, t_max_ps, n_samples);
        c.max_transfer.push_back(m);
        if (m > threshold) c.bits[static_cast<std::size_t>(sys.pairs[k].output_index)] = 1;
    }
    return c;
}

} // namespace qhc::dynamics
