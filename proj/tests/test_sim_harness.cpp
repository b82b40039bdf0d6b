#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "eombias/errors.hpp"
#include "eombias/sim_harness.hpp"

using namespace eombias;
using Catch::Approx;

namespace {

Scenario reference_scenario(double dv_norm, double f, std::uint64_t seed,
                            int n_periods = 25, double f_d = 0.5e6)
{
    const EomParams eom{1.0, 1.0, 0.0, 0.5};
    const PilotConfig pilot{f * eom.v_pi, f_d, 0.0, n_periods};
    const DetectorConfig det{0.1, 50e-12 * 50e-12, 5e6, 0.0};
    return make_scenario(eom, pilot, det, dv_norm, seed);
}

bool stats_equal(const ErrorStats& a, const ErrorStats& b)
{
    return a.n_trials == b.n_trials && a.n_excluded == b.n_excluded &&
           a.mean_estimate == b.mean_estimate && a.std_error == b.std_error &&
           a.bias == b.bias && a.predicted_std == b.predicted_std;
}

} // namespace

TEST_CASE("trial seeds form a reproducible, collision-free stream")
{
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 10000; ++i) {
        const std::uint64_t s = derive_trial_seed(42, i);
        CHECK(s == derive_trial_seed(42, i));
        seen.insert(s);
    }
    CHECK(seen.size() == 10000);
    CHECK(derive_trial_seed(42, 0) != derive_trial_seed(43, 0));
}

TEST_CASE("scenario construction enforces the bias identity")
{
    const Scenario sc = reference_scenario(0.002, 1e-3, 1);
    CHECK(sc.v_hat_min ==
          Approx(sc.eom.v_0 - sc.eom.v_pi - 0.002 * sc.eom.v_pi).margin(1e-18));

    const EomParams eom{1.0, 1.0, 0.0, 0.5};
    const PilotConfig bad_pilot{1e-3, 0.3e6, 0.0, 1};
    const DetectorConfig det{0.1, 0.0, 5e6, 0.0};
    CHECK_THROWS_AS(make_scenario(eom, bad_pilot, det, 0.0, 1), NonIntegerPeriods);
}

TEST_CASE("monte carlo results are identical for any worker count")
{
    const Scenario sc = reference_scenario(0.002, 1e-3, 314159);
    const ErrorStats serial = run_monte_carlo(sc, 64, 1);
    const ErrorStats four = run_monte_carlo(sc, 64, 4);
    const ErrorStats many = run_monte_carlo(sc, 64, 13);
    const ErrorStats hardware = run_monte_carlo(sc, 64, 0);
    CHECK(stats_equal(serial, four));
    CHECK(stats_equal(serial, many));
    CHECK(stats_equal(serial, hardware));
}

TEST_CASE("noise-free runs collapse to the model residual")
{
    const EomParams eom{1.0, 1.0, 0.0, 0.5};
    const PilotConfig pilot{1e-3, 0.5e6, 0.0, 25};
    const DetectorConfig quiet{0.1, 0.0, 5e6, 0.0};
    const Scenario sc = make_scenario(eom, pilot, quiet, 0.002, 9);

    const ErrorStats stats = run_monte_carlo(sc, 10, 2);
    CHECK(stats.n_trials == 10);
    CHECK(stats.n_excluded == 0);
    // Every trial sees the same deterministic trace, so the spread about the
    // truth equals the residual itself.
    CHECK(stats.std_error <= 1e-6);
    CHECK(std::abs(stats.bias) <= 1e-6);
    CHECK(stats.std_error ==
          Approx(std::abs(stats.bias) * std::sqrt(10.0 / 9.0)).epsilon(1e-9));
}

TEST_CASE("mid-range statistics straddle the prediction")
{
    const Scenario sc = reference_scenario(0.002, 1e-3, 271828);
    const ErrorStats stats = run_monte_carlo(sc, 2000);
    CHECK(stats.n_trials == 2000);
    CHECK(stats.n_excluded == 0);
    CHECK(stats.predicted_std == Approx(1.155239236309503e-4).epsilon(1e-12));
    CHECK(stats.std_error == Approx(stats.predicted_std).epsilon(0.10));
    // Bias indistinguishable from the (tiny) quadratic-model residual.
    CHECK(std::abs(stats.bias) <= 0.1 * stats.std_error);
}

TEST_CASE("doubling the burst length shrinks the error like one over sqrt(2)")
{
    const ErrorStats short_burst =
        run_monte_carlo(reference_scenario(0.002, 2e-3, 777, 25), 2000);
    const ErrorStats long_burst =
        run_monte_carlo(reference_scenario(0.002, 2e-3, 778, 50), 2000);

    const double ratio = long_burst.std_error / short_burst.std_error;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(ratio >= 0.9 * inv_sqrt2);
    CHECK(ratio <= 1.1 * inv_sqrt2);
    CHECK(long_burst.predicted_std ==
          Approx(short_burst.predicted_std * inv_sqrt2).epsilon(1e-12));
}

TEST_CASE("pilot frequency does not enter the statistics")
{
    // Same burst duration and sampling rate, pilot frequency doubled.
    const Scenario slow = reference_scenario(0.002, 1e-3, 5555, 25, 0.5e6);
    const Scenario fast = reference_scenario(0.002, 1e-3, 6666, 50, 1.0e6);

    const ErrorStats a = run_monte_carlo(slow, 2000);
    const ErrorStats b = run_monte_carlo(fast, 2000);

    CHECK(a.predicted_std == b.predicted_std);

    // Two-sample comparison of the spreads at three sigma.
    const double se = std::sqrt(a.std_error * a.std_error / (2.0 * 2000) +
                                b.std_error * b.std_error / (2.0 * 2000));
    CHECK(std::abs(a.std_error - b.std_error) <= 3.0 * se);
}

TEST_CASE("amplitude sweep covers the grid in order")
{
    const Scenario base = reference_scenario(0.0, 1e-3, 12345);
    const std::vector<double> grid{1e-3, 2e-3, 4e-3};
    const auto table = sweep_amplitude(base, grid, 60, 2);

    REQUIRE(table.size() == 3);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(table[i].f == grid[i]);
        CHECK(table[i].stats.n_trials == 60);
    }
    // At zero offset the predicted deviation halves when F doubles.
    CHECK(table[1].stats.predicted_std ==
          Approx(table[0].stats.predicted_std / 2.0).epsilon(1e-12));
    CHECK(table[2].stats.predicted_std ==
          Approx(table[1].stats.predicted_std / 2.0).epsilon(1e-12));
}

TEST_CASE("zero offset is predicted more accurate than a real offset at every F")
{
    const std::vector<double> grid{5e-4, 1e-3, 5e-3, 1e-2};
    const auto centered = sweep_amplitude(reference_scenario(0.0, 1e-3, 1), grid, 40, 2);
    const auto offset = sweep_amplitude(reference_scenario(0.002, 1e-3, 1), grid, 40, 2);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(centered[i].stats.predicted_std < offset[i].stats.predicted_std);
}

TEST_CASE("sweeps are reproducible across worker counts")
{
    const Scenario base = reference_scenario(0.002, 1e-3, 98765);
    const std::vector<double> grid{1e-3, 5e-3};
    const auto one = sweep_amplitude(base, grid, 80, 1);
    const auto many = sweep_amplitude(base, grid, 80, 7);
    REQUIRE(one.size() == many.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].f == many[i].f);
        CHECK(stats_equal(one[i].stats, many[i].stats));
    }
}

TEST_CASE("sweep input validation")
{
    const Scenario base = reference_scenario(0.002, 1e-3, 1);
    CHECK_THROWS_AS(sweep_amplitude(base, {}, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(sweep_amplitude(base, {1e-3, -1e-3}, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(run_monte_carlo(base, 1, 1), std::invalid_argument);
}

TEST_CASE("black level sweep enumerates all cells")
{
    const EomParams eom{1.0, 1.0, 0.0, 0.5};
    const std::vector<double> dv{0.0, 0.002};
    const std::vector<double> f{0.0, 1e-3, 1e-2};
    const auto table = sweep_black_level(eom, dv, f);

    REQUIRE(table.size() == 6);
    std::size_t idx = 0;
    for (const double d : dv) {
        for (const double ff : f) {
            CHECK(table[idx].delta_v_norm == d);
            CHECK(table[idx].f == ff);
            CHECK(table[idx].p_bl_rel_db ==
                  black_level(eom, d * eom.v_pi, ff * eom.v_pi));
            ++idx;
        }
    }
    // The null cell carries the sentinel.
    CHECK(std::isinf(table[0].p_bl_rel_db));
}
