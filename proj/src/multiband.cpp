#include "qhc/multiband.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qhc/error.hpp"

namespace qhc::multiband {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kClusterTol = 1e-9;

struct Level {
    double energy;
    double weight; // squared projection on the attach state
};

// Distinct eigenvalues with the attach-state diagonal of their projector.
std::vector<Level> levels(const SymMatrix& h, std::size_t state) {
    const Spectrum s = eig_sym(h);
    std::vector<Level> out;
    for (std::size_t k = 0; k < s.size();) {
        std::size_t end = k + 1;
        while (end < s.size() && s.eigenvalues[end] - s.eigenvalues[k] <= kClusterTol) ++end;
        double sum = 0.0, w = 0.0;
        for (std::size_t j = k; j < end; ++j) {
            sum += s.eigenvalues[j];
            w += s.component(state, j) * s.component(state, j);
        }
        out.push_back({sum / static_cast<double>(end - k), w});
        k = end;
    }
    return out;
}

struct Resonances {
    std::vector<std::pair<double, std::uint32_t>> r1; // (energy, output-1 input)
    std::vector<double> r0;
    std::vector<std::uint32_t> ones;
};

Resonances collect(const gates::GateDescriptor& d, const logic::TruthTable& t, const IntervalSearch& s) {
    if (d.input_arity != t.input_arity()) throw Error(ErrorCode::UnknownInput, "gate arity differs from truth table");
    if (s.output_index < 0 || s.output_index >= t.output_arity()) throw Error(ErrorCode::BadInput, "bad output index");
    if (s.weight_min <= 0.0) throw Error(ErrorCode::BadInput, "weight_min must be positive");
    const double threshold = s.weight_min * s.weight_min;
    Resonances res;
    for (std::uint32_t idx = 0; idx < t.row_count(); ++idx) {
        const SymMatrix h = gates::build(d, idx);
        if (s.attach_state >= h.order()) throw Error(ErrorCode::BadInput, "attach state outside the matrix");
        const bool one = t.output_bit(idx, s.output_index) == 1;
        if (one) res.ones.push_back(idx);
        for (const auto& lv : levels(h, s.attach_state)) {
            if (lv.weight <= threshold) continue;
            if (one)
                res.r1.emplace_back(lv.energy, idx);
            else
                res.r0.push_back(lv.energy);
        }
    }
    std::sort(res.r0.begin(), res.r0.end());
    return res;
}

// Open output-0-free gap around e.
std::pair<double, double> gap_around(const std::vector<double>& r0, double e) {
    double lo = -kInf, hi = kInf;
    for (double r : r0) {
        if (r <= e) lo = std::max(lo, r);
        if (r >= e) hi = std::min(hi, r);
    }
    return {lo, hi};
}

bool point_valid(const Resonances& res, const IntervalSearch& s, double e) {
    if (res.r1.empty()) return false;
    double d1 = kInf, d0 = kInf;
    for (const auto& [r, idx] : res.r1) d1 = std::min(d1, std::abs(e - r));
    for (double r : res.r0) d0 = std::min(d0, std::abs(e - r));
    if (!(d1 < d0)) return false;
    const auto [lo, hi] = gap_around(res.r0, e);
    for (auto input : res.ones) {
        bool covered = false;
        for (const auto& [r, idx] : res.r1)
            if (idx == input && r > lo && r < hi && r >= s.e_min && r <= s.e_max) covered = true;
        if (!covered) return false;
    }
    return true;
}

} // namespace

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> out;
    if (n == 0) return out;
    if (n == 1) return {lo};
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    return out;
}

RootSets root_sets(const gates::GateDescriptor& d) {
    RootSets out;
    for (std::uint32_t idx = 0; idx < (std::uint32_t{1} << d.input_arity); ++idx)
        out.push_back(eig_sym(gates::build(d, idx)).eigenvalues);
    return out;
}

GapMetrics gap_metrics(const gates::GateDescriptor& d) {
    if (d.input_arity != 2) throw Error(ErrorCode::BadInput, "gap metrics need a two-input gate");
    const RootSets r = root_sets(d);
    const auto maxmin = [](const Vector& probe, const Vector& a, const Vector& b, double& arg) {
        double best = -kInf;
        for (double x : probe) {
            double nearest = kInf;
            for (double y : a) nearest = std::min(nearest, std::abs(x - y));
            for (double y : b) nearest = std::min(nearest, std::abs(x - y));
            if (nearest > best) {
                best = nearest;
                arg = x;
            }
        }
        return best;
    };
    GapMetrics g;
    g.delta1 = maxmin(r[1], r[0], r[3], g.xor_energy);
    g.delta2 = maxmin(r[3], r[0], r[1], g.and_energy);
    return g;
}

ScanMask scan_validity(const gates::GateDescriptor& d, const logic::TruthTable& t, const IntervalSearch& s) {
    if (s.grid_n < 100) throw Error(ErrorCode::BadInput, "grid_n must be at least 100");
    if (!(s.e_min < s.e_max)) throw Error(ErrorCode::BadInput, "empty energy range");
    const Resonances res = collect(d, t, s);
    ScanMask mask;
    mask.energies = linspace(s.e_min, s.e_max, s.grid_n);
    for (double e : mask.energies) mask.valid.push_back(point_valid(res, s, e));
    return mask;
}

std::vector<ReadingInterval> find_intervals(const gates::GateDescriptor& d, const logic::TruthTable& t,
                                            const IntervalSearch& s) {
    const ScanMask mask = scan_validity(d, t, s);
    const Resonances res = collect(d, t, s);
    const double threshold = s.weight_min * s.weight_min;
    std::vector<ReadingInterval> out;
    for (std::size_t i = 0; i < mask.valid.size();) {
        if (!mask.valid[i]) {
            ++i;
            continue;
        }
        std::size_t end = i;
        while (end < mask.valid.size() && mask.valid[end]) ++end;
        const auto [glo, ghi] = gap_around(res.r0, mask.energies[i]);
        double r1min = kInf, r1max = -kInf;
        for (const auto& [r, idx] : res.r1)
            if (r > glo && r < ghi) {
                r1min = std::min(r1min, r);
                r1max = std::max(r1max, r);
            }
        ReadingInterval iv;
        iv.output_index = s.output_index;
        iv.attach_state = s.attach_state;
        iv.lo = std::isfinite(glo) ? std::max(s.e_min, 0.5 * (glo + r1min)) : s.e_min;
        iv.hi = std::isfinite(ghi) ? std::min(s.e_max, 0.5 * (r1max + ghi)) : s.e_max;
        iv.min_weight = kInf;
        for (auto input : res.ones) {
            double best = -1.0;
            for (const auto& lv : levels(gates::build(d, input), s.attach_state))
                if (lv.energy >= iv.lo && lv.energy <= iv.hi && lv.weight > threshold) best = std::max(best, lv.weight);
            if (best >= 0.0) {
                iv.witnesses.push_back(input);
                iv.min_weight = std::min(iv.min_weight, best);
            }
        }
        if (iv.witnesses.empty()) iv.min_weight = 0.0;
        out.push_back(std::move(iv));
        i = end;
    }
    if (out.empty()) throw Error(ErrorCode::NoInterval, "no unambiguous reading interval in range");
    std::stable_sort(out.begin(), out.end(),
                     [](const ReadingInterval& a, const ReadingInterval& b) { return a.width() > b.width(); });
    return out;
}

OptimizationResult optimize_me_half_adder(const std::vector<double>& e_grid) {
    if (e_grid.empty()) throw Error(ErrorCode::BadInput, "empty e grid");
    constexpr std::size_t kReadState = 1;
    constexpr double kFlat = 1e-9;
    OptimizationResult result;
    for (double e : e_grid) {
        const auto d = gates::make_me_half_adder3(e);
        OptimizationPoint p;
        p.e = e;
        p.gaps = gap_metrics(d);
        p.and_weight = projector_weight(eig_sym(gates::build(d, 3u)), kReadState, p.gaps.and_energy, kClusterTol);
        p.xor_weight = projector_weight(eig_sym(gates::build(d, 1u)), kReadState, p.gaps.xor_energy, kClusterTol);
        p.deviation = std::max(std::abs(p.and_weight - 0.5), std::abs(p.xor_weight - 0.5));
        result.points.push_back(p);
    }
    const auto key_dev = [&](const OptimizationPoint& p) { return p.deviation <= kFlat ? 0.0 : p.deviation; };
    for (std::size_t i = 1; i < result.points.size(); ++i) {
        const auto& cand = result.points[i];
        const auto& best = result.points[result.best_index];
        const double dc = key_dev(cand), db = key_dev(best);
        const double gc = std::min(cand.gaps.delta1, cand.gaps.delta2);
        const double gb = std::min(best.gaps.delta1, best.gaps.delta2);
        if (dc < db || (dc == db && gc > gb)) result.best_index = i;
    }
    result.best_e = result.best().e;

    const auto d = gates::make_me_half_adder3(result.best_e);
    const RootSets r = root_sets(d);
    const GapMetrics& g = result.best().gaps;
    const auto attaining = [](const Vector& probe, const Vector& a, const Vector& b, double target) {
        std::vector<double> hits;
        for (double x : probe) {
            double nearest = kInf;
            for (double y : a) nearest = std::min(nearest, std::abs(x - y));
            for (double y : b) nearest = std::min(nearest, std::abs(x - y));
            if (std::abs(nearest - target) <= 1e-9) hits.push_back(x);
        }
        return hits;
    };
    result.and_energies = attaining(r[3], r[0], r[1], g.delta2);
    result.xor_energies = attaining(r[1], r[0], r[3], g.delta1);
    return result;
}

} // namespace qhc::multiband
