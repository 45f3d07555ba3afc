#include <doctest.h>

#include <cmath>
#include <complex>

#include "qhc/error.hpp"
#include "qhc/gates.hpp"
#include "qhc/transport.hpp"

using namespace qhc;
using namespace qhc::transport;
using cd = std::complex<double>;

namespace {

const double kSqrt2 = std::sqrt(2.0);

// G_aa of (E − H0 − Σ) with Σ = 2ε²g on the attach site, by complex Gauss–Jordan.
cd direct_green(const SymMatrix& h0, std::size_t attach, cd sigma, double e) {
    const std::size_t n = h0.order();
    std::vector<std::vector<cd>> m(n, std::vector<cd>(n + 1, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = (i == j ? e : 0.0) - h0(i, j);
        m[i][n] = i == attach ? 1.0 : 0.0;
    }
    m[attach][attach] -= sigma;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
        std::swap(m[c], m[piv]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            const cd f = m[r][c] / m[c][c];
            for (std::size_t k = c; k <= n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return m[attach][n] / m[attach][attach];
}

double direct_transmission(const SymMatrix& h0, std::size_t attach, const LeadModel& lead, double e) {
    const cd g = surface_green(e, lead);
    const double eps2 = lead.epsilon * lead.epsilon;
    const double gamma = 2.0 * eps2 * std::abs(g.imag());
    return gamma * gamma * std::norm(direct_green(h0, attach, 2.0 * eps2 * g, e));
}

std::vector<SymMatrix> all_inputs(const gates::GateDescriptor& d) {
    std::vector<SymMatrix> out;
    for (std::uint32_t i = 0; i < (1u << d.input_arity); ++i) out.push_back(gates::build(d, i));
    return out;
}

// Full width at half maximum around a peak of height near 1, by bisection.
double fwhm(const SymMatrix& h0, std::size_t attach, const LeadModel& lead, double peak) {
    const auto edge = [&](double dir) {
        double in = peak, out = peak + dir * 0.2;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (in + out);
            (transmission_at(h0, attach, lead, mid) > 0.5 ? in : out) = mid;
        }
        return in;
    };
    return edge(1.0) - edge(-1.0);
}

} // namespace

TEST_CASE("surface Green function") {
    const LeadModel lead;
    const cd g0 = surface_green(0.0, lead);
    CHECK(std::abs(g0 - cd(0.0, -1.0 / 4.0)) < 1e-15);
    for (double e : {1.0, -3.7, 7.9, 8.5, -12.0}) {
        const cd g = surface_green(e, lead);
        const cd q = lead.h * lead.h * g * g - e * g + 1.0;
        CHECK(std::abs(q) < 1e-12);
        CHECK(g.imag() <= 0.0);
        if (std::abs(e) > 2 * lead.h) {
            CHECK(g.imag() == 0.0);
            CHECK(std::abs(g) <= 1.0 / lead.h + 1e-12); // decaying root
        }
    }
    CHECK(std::abs(surface_green(8.0 - 1e-9, lead).imag()) < 1e-3);
    LeadModel shifted = lead;
    shifted.onsite = 0.5;
    CHECK(std::abs(surface_green(0.5, shifted) - g0) < 1e-15);
    LeadModel bad = lead;
    bad.h = 0.0;
    CHECK_THROWS_AS(surface_green(0.0, bad), Error);
}

TEST_CASE("single site on resonance transmits fully") {
    const SymMatrix site{{0.0}};
    const LeadModel lead;
    CHECK(transmission_at(site, 0, lead, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(transmission_at(site, 0, lead, 0.5) < 0.01);
    const auto ts = transmission(site, 0, lead, default_grid());
    const auto peaks = resonance_peaks(ts, 0.5);
    REQUIRE(peaks.size() == 1);
    CHECK(std::abs(peaks[0]) < 1e-12);
}

TEST_CASE("Dyson form agrees with direct complex inversion") {
    const LeadModel lead;
    const std::vector<std::pair<gates::GateDescriptor, std::size_t>> gates_and_sites = {
        {gates::make_me_half_adder3(0.0), 1},
        {gates::make_me_half_adder3(0.3), 0},
        {gates::make_me_full_adder5(std::sqrt(15.0) / 4.0), 4},
        {gates::make_half_adder5(1.0), 3},
        {gates::make_full_adder8_typ(), 6},
    };
    for (const auto& [d, site] : gates_and_sites)
        for (const SymMatrix& h0 : all_inputs(d))
            for (double e = -2.95; e < 3.0; e += 0.173) {
                const double t = transmission_at(h0, site, lead, e);
                const double ref = direct_transmission(h0, site, lead, e);
                CHECK(std::abs(t - ref) <= 1e-9 * std::max(1.0, ref));
            }
}

TEST_CASE("transmission stays within [0, 1] for every catalog gate") {
    const LeadModel lead;
    const auto grid = default_grid();
    CHECK(grid.size() == 2001);
    CHECK(grid.front() == -3.0);
    CHECK(grid.back() == 3.0);
    for (auto f : gates::catalog_families()) {
        const auto d = gates::catalog_gate(f);
        for (const SymMatrix& h0 : all_inputs(d))
            for (std::size_t s = 0; s < h0.order(); ++s) {
                TransmissionSpectrum ts;
                try {
                    ts = transmission(h0, s, lead, grid);
                } catch (const Error& e) {
                    CHECK(e.code() == ErrorCode::SingularGreen);
                    continue;
                }
                for (double t : ts.T) {
                    CHECK(t >= 0.0);
                    CHECK(t <= 1.0 + 1e-9);
                }
            }
    }
}

TEST_CASE("three-state half adder resonances") {
    const LeadModel lead;
    const auto d = gates::make_me_half_adder3(0.0);
    const auto expect = [&](std::uint32_t input, std::vector<double> where) {
        const SymMatrix h0 = gates::build(d, input);
        const auto ts = transmission(h0, 1, lead, default_grid());
        const auto curve = [&](double e) { return transmission_at(h0, 1, lead, e); };
        const auto peaks = resonance_peaks(ts, 0.5, curve);
        REQUIRE(peaks.size() == where.size());
        for (std::size_t k = 0; k < where.size(); ++k) {
            CHECK(std::abs(peaks[k] - where[k]) < 0.01);
            CHECK(curve(peaks[k]) > 0.99);
        }
    };
    expect(1, {-1.0, 1.0});
    expect(2, {-1.0, 1.0});
    expect(3, {-kSqrt2, kSqrt2});

    const SymMatrix h00 = gates::build(d, 0u);
    for (double e = 0.5; e < (1 + kSqrt2) / 2; e += 0.01) CHECK(transmission_at(h00, 1, lead, e) < 0.1);
}

TEST_CASE("five-state full adder resonances follow the truth table") {
    const LeadModel lead;
    const auto d = gates::make_me_full_adder5(std::sqrt(15.0) / 4.0);
    const auto t = logic::builtin_table("full_adder");
    for (std::uint32_t in = 0; in < 8; ++in) {
        const SymMatrix h0 = gates::build(d, in);
        const auto ts = transmission(h0, 4, lead, default_grid());
        const auto curve = [&](double e) { return transmission_at(h0, 4, lead, e); };
        const auto peaks = resonance_peaks(ts, 0.5, curve);
        const auto near = [&](double target) {
            for (double p : peaks)
                if (std::abs(p - target) < 0.01) return true;
            return false;
        };
        CHECK(near(1.5) == (t.output_bit(in, 0) == 1));
        CHECK(near(0.0) == (t.output_bit(in, 1) == 1));
    }
}

TEST_CASE("peaks sit on eigenvalues with attach weight and vice versa") {
    const LeadModel lead;
    const double window = 5.0 * lead.epsilon * lead.epsilon / lead.h;
    const std::vector<std::pair<gates::GateDescriptor, std::size_t>> cases = {
        {gates::make_me_half_adder3(0.0), 1},
        {gates::make_me_half_adder3(-0.4), 1},
        {gates::make_me_full_adder5(std::sqrt(15.0) / 4.0), 4},
        {gates::make_generic3(0.3, -0.5, 1.1), 1},
    };
    for (const auto& [d, site] : cases)
        for (const SymMatrix& h0 : all_inputs(d)) {
            const Spectrum s = eig_sym(h0);
            const auto ts = transmission(h0, site, lead, default_grid());
            const auto curve = [&](double e) { return transmission_at(h0, site, lead, e); };
            const auto peaks = resonance_peaks(ts, 0.5, curve);
            std::vector<double> levels;
            for (std::size_t k = 0; k < s.size(); ++k) {
                const double l = s.eigenvalues[k];
                if (projector_weight(s, site, l, 1e-9) > 0.01 && l > -3.0 && l < 3.0) levels.push_back(l);
            }
            for (double p : peaks) {
                bool ok = false;
                for (double l : levels) ok = ok || std::abs(p - l) <= window;
                CHECK(ok);
            }
            // narrow resonances can fall between grid points, so the converse
            // is checked on the continuous curve
            for (double l : levels) {
                double best = 0.0;
                for (int k = -200; k <= 200; ++k) best = std::max(best, curve(l + window * k / 200.0));
                CHECK_MESSAGE(best > 0.5, "level " << l);
            }
        }
}

TEST_CASE("peak widths shrink as ε²") {
    const SymMatrix h0 = gates::build(gates::make_me_half_adder3(0.0), 3u);
    LeadModel a, b;
    a.epsilon = 0.1;
    b.epsilon = 0.05;
    const double wa = fwhm(h0, 1, a, kSqrt2), wb = fwhm(h0, 1, b, kSqrt2);
    CHECK(wa / wb == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("peak search edge cases") {
    TransmissionSpectrum flat;
    flat.energies = {0, 1, 2, 3};
    flat.T = {0, 0, 0, 0};
    CHECK(resonance_peaks(flat, 0.5).empty());
    CHECK_THROWS_AS(resonance_peaks(flat, 0.0), Error);
    CHECK_THROWS_AS(resonance_peaks(flat, 1.0), Error);
}
