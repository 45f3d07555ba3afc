#include "qhc/transport.hpp"

#include <cmath>

#include "qhc/error.hpp"

namespace qhc::transport {

std::complex<double> surface_green(double energy, const LeadModel& lead) {
    if (!(lead.h > 0.0)) throw Error(ErrorCode::BadInput, "lead hopping must be positive");
    const double h2 = lead.h * lead.h;
    const double delta = energy - lead.onsite;
    const double disc = delta * delta - 4.0 * h2;
    if (disc < 0.0) return {delta / (2.0 * h2), -std::sqrt(-disc) / (2.0 * h2)};
    const double root = std::sqrt(disc);
    return {(delta >= 0.0 ? delta - root : delta + root) / (2.0 * h2), 0.0};
}

double transmission_at(const SymMatrix& h0, std::size_t attach_state, const LeadModel& lead, double energy) {
    if (attach_state >= h0.order()) throw Error(ErrorCode::BadInput, "attach state outside the matrix");
    const Spectrum s = eig_sym(h0);
    const std::complex<double> g = surface_green(energy, lead);
    const std::complex<double> sigma = 2.0 * lead.epsilon * lead.epsilon * g;

    // Attach-site Green function of the isolated block, kept as 1/g0 so that
    // levels sitting exactly at E give a finite Dyson denominator.
    double g0 = 0.0;
    bool on_pole = false;
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double c2 = s.component(attach_state, k) * s.component(attach_state, k);
        if (c2 <= 1e-24) continue;
        const double detuning = energy - s.eigenvalues[k];
        if (detuning == 0.0) {
            on_pole = true;
            break;
        }
        g0 += c2 / detuning;
    }
    std::complex<double> g_aa;
    if (on_pole) {
        g_aa = -1.0 / sigma;
    } else if (g0 == 0.0) {
        g_aa = 0.0;
    } else {
        const std::complex<double> denom = 1.0 / g0 - sigma;
        if (std::abs(denom) == 0.0) throw Error(ErrorCode::SingularGreen, "real pole of the attach Green function");
        g_aa = 1.0 / denom;
    }
    const double gamma = 2.0 * lead.epsilon * lead.epsilon * std::abs(g.imag());
    return gamma * gamma * std::norm(g_aa);
}

TransmissionSpectrum transmission(const SymMatrix& h0, std::size_t attach_state, const LeadModel& lead,
                                  std::span<const double> grid) {
    TransmissionSpectrum ts;
    ts.energies.assign(grid.begin(), grid.end());
    ts.T.reserve(grid.size());
    for (double e : grid) ts.T.push_back(transmission_at(h0, attach_state, lead, e));
    return ts;
}

std::vector<double> resonance_peaks(const TransmissionSpectrum& ts, double t_min,
                                    const std::function<double(double)>& curve) {
    if (!(t_min > 0.0 && t_min < 1.0)) throw Error(ErrorCode::BadInput, "t_min must lie in (0, 1)");
    std::vector<double> peaks;
    const std::size_t n = ts.T.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (ts.T[i] <= t_min) continue;
        const bool left = i == 0 || ts.T[i] >= ts.T[i - 1];
        const bool right = i + 1 == n || ts.T[i] > ts.T[i + 1];
        if (!left || !right) continue;
        if (!curve || i == 0 || i + 1 == n) {
            peaks.push_back(ts.energies[i]);
            continue;
        }
        constexpr double invphi = 0.6180339887498949;
        double a = ts.energies[i - 1], b = ts.energies[i + 1];
        double c = b - invphi * (b - a), d = a + invphi * (b - a);
        double fc = curve(c), fd = curve(d);
        for (int it = 0; it < 100 && b - a > 1e-12; ++it) {
            if (fc > fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - invphi * (b - a);
                fc = curve(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + invphi * (b - a);
                fd = curve(d);
            }
        }
        peaks.push_back(0.5 * (a + b));
    }
    return peaks;
}

std::vector<double> default_grid() {
    std::vector<double> grid(2001);
    for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = -3.0 + 6.0 * static_cast<double>(i) / 2000.0;
    return grid;
}

} // namespace qhc::transport
