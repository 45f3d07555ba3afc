#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qhc/linalg.hpp"

namespace qhc::transport {

/// Semi-infinite 1D tight-binding chain; its end site couples to the attach
/// state with strength epsilon. Energies in eV.
struct LeadModel {
    double h = 4.0;
    double onsite = 0.0;
    double epsilon = 0.1;
};

/// End-site Green function of the chain: the retarded root of
/// h²g² − Δg + 1 = 0 in band, the decaying real root outside.
std::complex<double> surface_green(double energy, const LeadModel& lead);

/// T(E) for two identical leads on the same attach state. Throws
/// Error(SingularGreen) on an exact real pole.
double transmission_at(const SymMatrix& h0, std::size_t attach_state, const LeadModel& lead, double energy);

struct TransmissionSpectrum {
    std::vector<double> energies;
    std::vector<double> T;
};

TransmissionSpectrum transmission(const SymMatrix& h0, std::size_t attach_state, const LeadModel& lead,
                                  std::span<const double> grid);

/// Local grid maxima above t_min; when `curve` is given each one is refined
/// by golden-section search between its neighbours.
std::vector<double> resonance_peaks(const TransmissionSpectrum& ts, double t_min,
                                    const std::function<double(double)>& curve = {});

/// Default grid: 2001 points over [−3, 3] eV.
std::vector<double> default_grid();

} // namespace qhc::transport
