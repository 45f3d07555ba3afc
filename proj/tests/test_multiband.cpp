#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qhc/error.hpp"
#include "qhc/multiband.hpp"

using namespace qhc;
using namespace qhc::multiband;

namespace {

const double kSqrt2 = std::sqrt(2.0);

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::BadInput;
}

// Brute-force max–min distance from `from` to the union `against`.
double max_min(const Vector& from, const std::vector<const Vector*>& against) {
    double best = 0.0;
    for (double r : from) {
        double nearest = 1e300;
        for (const Vector* s : against)
            for (double q : *s) nearest = std::min(nearest, std::abs(r - q));
        best = std::max(best, nearest);
    }
    return best;
}

// Output j realised on `state` at the single energy E, for every input.
bool realises(const std::vector<Spectrum>& sp, const logic::TruthTable& t, int j, std::size_t state, double e) {
    for (std::uint32_t i = 0; i < sp.size(); ++i) {
        const bool on = projector_weight(sp[i], state, e, 1e-8) > 0.05 * 0.05;
        if (on != (t.output_bit(i, j) == 1)) return false;
    }
    return true;
}

bool single_energy_full_adder(const gates::GateDescriptor& d, const logic::TruthTable& t) {
    std::vector<Spectrum> sp;
    for (std::uint32_t i = 0; i < 8; ++i) sp.push_back(eig_sym(gates::build(d, i)));
    // input 111 has both outputs at 1, so every candidate energy is one of its roots
    for (std::size_t s = 0; s < sp[0].eigenvalues.size(); ++s) {
        bool ok[2] = {false, false};
        for (int j = 0; j < 2; ++j)
            for (double e : sp[7].eigenvalues) ok[j] = ok[j] || realises(sp, t, j, s, e);
        if (ok[0] && ok[1]) return true;
    }
    return false;
}

} // namespace

TEST_CASE("root sets of the three-state half adder at e = 0") {
    const RootSets r = root_sets(gates::make_me_half_adder3(0.0));
    const Vector expected[] = {{0, 0, 0}, {-1, 0, 1}, {-1, 0, 1}, {-kSqrt2, 0, kSqrt2}};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(r[i][k] - expected[i][k]) < 1e-10);
}

TEST_CASE("gap metrics") {
    const auto d = gates::make_me_half_adder3(0.0);
    const GapMetrics g = gap_metrics(d);
    CHECK(std::abs(g.delta1 - (kSqrt2 - 1.0)) < 1e-10);
    CHECK(std::abs(g.delta2 - (kSqrt2 - 1.0)) < 1e-10);
    CHECK(std::abs(std::abs(g.xor_energy) - 1.0) < 1e-10);
    CHECK(std::abs(std::abs(g.and_energy) - kSqrt2) < 1e-10);

    for (double e : {-0.6, -0.2, 0.3, 0.8}) {
        const auto de = gates::make_me_half_adder3(e);
        const RootSets r = root_sets(de);
        const GapMetrics ge = gap_metrics(de);
        CHECK(ge.delta1 == doctest::Approx(max_min(r[1], {&r[0], &r[3]})).epsilon(1e-12));
        CHECK(ge.delta2 == doctest::Approx(max_min(r[3], {&r[0], &r[1]})).epsilon(1e-12));
    }

    gates::LinearFamily flat;
    flat.base = SymMatrix{{1, 0.5}, {0.5, -1}};
    flat.positions = {{0, 0, 1, 0.0}, {1, 0, 0, 0.0}};
    flat.input_arity = 2;
    const GapMetrics z = gap_metrics(gates::make_custom(flat));
    CHECK(z.delta1 == 0.0);
    CHECK(z.delta2 == 0.0);

    CHECK(code_of([] { gap_metrics(gates::make_full_adder8_typ()); }) == ErrorCode::BadInput);
}

TEST_CASE("gap metrics are symmetric under swapping the inputs") {
    // generic3 with α and β on mirrored couplings
    gates::LinearFamily f;
    f.base = SymMatrix{{0.3, 0, 0.7}, {0, -0.4, 0}, {0.7, 0, 0.3}};
    f.positions = {{0, 0, 1}, {1, 1, 2}};
    f.input_arity = 2;
    gates::LinearFamily g = f;
    g.positions = {{1, 0, 1}, {0, 1, 2}};
    const GapMetrics a = gap_metrics(gates::make_custom(f));
    const GapMetrics b = gap_metrics(gates::make_custom(g));
    CHECK(a.delta1 == doctest::Approx(b.delta1).epsilon(1e-12));
    CHECK(a.delta2 == doctest::Approx(b.delta2).epsilon(1e-12));
}

TEST_CASE("reading intervals of the three-state half adder") {
    const auto d = gates::make_me_half_adder3(0.0);
    const auto t = logic::builtin_table("half_adder");
    IntervalSearch s;
    s.output_index = 0;
    s.attach_state = 1;
    s.e_min = 0.2;
    s.e_max = 1.3;
    const auto xs = find_intervals(d, t, s);
    REQUIRE(xs.size() == 1);
    CHECK(xs[0].lo == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(xs[0].hi == doctest::Approx((1.0 + kSqrt2) / 2.0).epsilon(1e-9));
    CHECK(xs[0].witnesses == std::vector<std::uint32_t>{1, 2});
    CHECK(xs[0].min_weight == doctest::Approx(0.5));

    s.output_index = 1;
    s.e_min = 1.05;
    s.e_max = 1.35;
    CHECK(code_of([&] { find_intervals(d, t, s); }) == ErrorCode::NoInterval);

    s.e_min = -3.0;
    s.e_max = 3.0;
    const auto full = find_intervals(d, t, s);
    REQUIRE(!full.empty());
    for (std::size_t k = 1; k < full.size(); ++k) CHECK(full[k - 1].width() >= full[k].width());
    for (const auto& iv : full) CHECK(iv.lo < iv.hi);
}

TEST_CASE("carry interval of the five-state full adder contains zero") {
    const auto d = gates::make_me_full_adder5(std::sqrt(15.0) / 4.0);
    const auto t = logic::builtin_table("full_adder");
    IntervalSearch s;
    s.output_index = 1;
    s.attach_state = 4;
    const auto xs = find_intervals(d, t, s);
    const bool has_zero =
        std::any_of(xs.begin(), xs.end(), [](const ReadingInterval& iv) { return iv.lo < 0.0 && iv.hi > 0.0; });
    CHECK(has_zero);
    s.output_index = 0;
    const auto ss = find_intervals(d, t, s);
    const bool has_sum =
        std::any_of(ss.begin(), ss.end(), [](const ReadingInterval& iv) { return iv.lo < 1.5 && iv.hi > 1.5; });
    CHECK(has_sum);
}

TEST_CASE("intervals are exactly the valid grid points and each satisfies its invariant") {
    struct Case {
        gates::GateDescriptor d;
        std::string table;
        int output;
        std::size_t state;
    };
    const Case cases[] = {
        {gates::make_me_half_adder3(0.0), "half_adder", 0, 1},
        {gates::make_me_half_adder3(0.0), "half_adder", 1, 1},
        {gates::make_me_half_adder3(0.25), "half_adder", 0, 1},
        {gates::make_me_full_adder5(std::sqrt(15.0) / 4.0), "full_adder", 0, 4},
        {gates::make_me_full_adder5(std::sqrt(15.0) / 4.0), "full_adder", 1, 4},
    };
    for (const auto& c : cases) {
        const auto t = logic::builtin_table(c.table);
        IntervalSearch s;
        s.output_index = c.output;
        s.attach_state = c.state;
        s.grid_n = 2001;
        const ScanMask mask = scan_validity(c.d, t, s);
        const auto xs = find_intervals(c.d, t, s);
        REQUIRE(mask.energies.size() == 2001);
        for (std::size_t g = 0; g < mask.energies.size(); ++g) {
            const double e = mask.energies[g];
            const bool inside =
                std::any_of(xs.begin(), xs.end(), [&](const ReadingInterval& iv) { return e >= iv.lo && e <= iv.hi; });
            if (inside != mask.valid[g]) FAIL("grid point " << e << " disagrees with the interval list");
        }

        std::vector<Spectrum> sp;
        for (std::uint32_t i = 0; i < t.row_count(); ++i) sp.push_back(eig_sym(gates::build(c.d, i)));
        for (const auto& iv : xs) {
            for (std::uint32_t i = 0; i < t.row_count(); ++i) {
                double w = 0.0;
                for (std::size_t k = 0; k < sp[i].eigenvalues.size(); ++k) {
                    const double l = sp[i].eigenvalues[k];
                    if (l >= iv.lo && l <= iv.hi) w = std::max(w, sp[i].component(c.state, k) * sp[i].component(c.state, k));
                }
                if (t.output_bit(i, c.output) == 1) {
                    CHECK(w > 0.05 * 0.05);
                } else {
                    CHECK(w <= 0.05 * 0.05);
                }
            }

            // a reading tuned to the midpoint with the half-width as tolerance
            const gates::ReadingSpec r[] = {{c.output, c.state, iv.midpoint(), 1e-3}};
            gates::VerifyOptions opt;
            opt.tol = iv.width() / 2.0;
            opt.strict_kernel = false;
            CHECK(gates::verify_multi_energy(c.d, t, r, opt).pass);
        }
    }
}

TEST_CASE("optimization of the three-state half adder") {
    const OptimizationResult r = optimize_me_half_adder(linspace(-1.0, 1.0, 201));
    CHECK(std::abs(r.best_e) < 1e-12);
    CHECK(r.best().deviation < 1e-9);
    CHECK(r.best().gaps.delta1 == doctest::Approx(kSqrt2 - 1.0));
    std::vector<double> and_abs, xor_abs;
    for (double e : r.and_energies) and_abs.push_back(std::abs(e));
    for (double e : r.xor_energies) xor_abs.push_back(std::abs(e));
    for (double e : and_abs) CHECK(e == doctest::Approx(kSqrt2));
    for (double e : xor_abs) CHECK(e == doctest::Approx(1.0));
    CHECK(!and_abs.empty());
    CHECK(!xor_abs.empty());

    const auto grid = linspace(-1.0, 1.0, 200);
    const OptimizationResult off = optimize_me_half_adder(grid);
    double nearest = 1e9;
    for (double e : grid) nearest = std::min(nearest, std::abs(e));
    CHECK(std::abs(off.best_e) == doctest::Approx(nearest));

    const OptimizationResult one = optimize_me_half_adder({0.3});
    CHECK(one.best_e == 0.3);
    CHECK(one.points.size() == 1);
    CHECK(one.best().gaps.delta1 == doctest::Approx(gap_metrics(gates::make_me_half_adder3(0.3)).delta1));
}

TEST_CASE("no four-state block reads the full adder at one energy per output") {
    const auto t = logic::builtin_table("full_adder");
    // positive control: the five-state block does
    CHECK(single_energy_full_adder(gates::make_me_full_adder5(std::sqrt(15.0) / 4.0), t));

    // the five-state structure with the extra state removed
    const auto onsite = linspace(-2.0, 2.0, 17);
    const double couplings[] = {0.25, 0.5, 1.0, 1.5, 2.0};
    int feasible = 0;
    for (double e : onsite)
        for (double dd : onsite)
            for (double a : onsite)
                for (double k : couplings)
                    for (double x : couplings) {
                        gates::LinearFamily f;
                        f.base = SymMatrix{{e, 0, 0, k}, {0, dd, 0, x}, {0, 0, e, k}, {k, x, k, a}};
                        f.positions = {{0, 0, 1}, {1, 1, 2}, {2, 0, 2}};
                        f.input_arity = 3;
                        if (single_energy_full_adder(gates::make_custom(f), t)) ++feasible;
                    }
    CHECK(feasible == 0);
}
