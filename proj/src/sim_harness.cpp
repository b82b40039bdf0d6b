#include "eombias/sim_harness.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include "eombias/errors.hpp"
#include "eombias/estimator.hpp"

namespace eombias {

std::uint64_t derive_trial_seed(std::uint64_t base, std::uint64_t counter)
{
    // SplitMix64 output function over a counter stream anchored at the base
    // seed; independent of evaluation order by construction.
    std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (counter + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

Scenario make_scenario(const EomParams& eom, const PilotConfig& pilot,
                       const DetectorConfig& detector, double true_delta_v_norm,
                       std::uint64_t seed)
{
    validate_sampling(pilot, detector.f_s);
    const double v_hat_min = eom.v_0 - eom.v_pi - true_delta_v_norm * eom.v_pi;
    return Scenario{eom, pilot, detector, true_delta_v_norm, v_hat_min, seed};
}

namespace {

int resolve_workers(int n_workers)
{
    if (n_workers > 0)
        return n_workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

} // namespace

ErrorStats run_monte_carlo(const Scenario& sc, int n_trials, int n_workers)
{
    if (n_trials < 2)
        throw std::invalid_argument("run_monte_carlo: n_trials must be >= 2");
    if (!(sc.pilot.v_d > 0.0))
        throw std::invalid_argument("run_monte_carlo: pilot amplitude must be > 0");

    const NormalizedAmplitude f{sc.pilot.v_d / sc.eom.v_pi};
    const double truth = sc.true_delta_v_norm;

    std::vector<double> estimates(static_cast<std::size_t>(n_trials), 0.0);
    std::vector<char> included(static_cast<std::size_t>(n_trials), 0);

    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto run_range = [&](int lo, int hi) {
        try {
            for (int i = lo; i < hi; ++i) {
                const std::uint64_t trial_seed =
                    derive_trial_seed(sc.seed, static_cast<std::uint64_t>(i));
                const SampledTrace trace = simulate_burst(sc.eom, sc.pilot, sc.detector,
                                                          sc.v_hat_min, trial_seed);
                try {
                    estimates[static_cast<std::size_t>(i)] =
                        estimate_delta_v_norm(trace, f, sc.pilot.f_d).delta_v_norm;
                    included[static_cast<std::size_t>(i)] = 1;
                } catch (const DegenerateDenominator&) {
                    // excluded, counted below
                }
            }
        } catch (...) {
            const std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure)
                failure = std::current_exception();
        }
    };

    const int workers = std::min(resolve_workers(n_workers), n_trials);
    if (workers <= 1) {
        run_range(0, n_trials);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            const int lo = static_cast<int>(static_cast<long long>(n_trials) * w / workers);
            const int hi = static_cast<int>(static_cast<long long>(n_trials) * (w + 1) / workers);
            pool.emplace_back(run_range, lo, hi);
        }
        for (auto& t : pool)
            t.join();
    }
    if (failure)
        std::rethrow_exception(failure);

    // Fixed-order accumulation over trial indices keeps the statistics
    // bit-identical for any worker count.
    int n_included = 0;
    double sum = 0.0;
    for (int i = 0; i < n_trials; ++i) {
        if (included[static_cast<std::size_t>(i)]) {
            ++n_included;
            sum += estimates[static_cast<std::size_t>(i)];
        }
    }

    ErrorStats stats;
    stats.n_trials = n_included;
    stats.n_excluded = n_trials - n_included;
    stats.predicted_std =
        predicted_error_variance(sc.eom, sc.detector, f, sc.pilot.duration(), truth).sigma;

    if (n_included < 2) {
        stats.mean_estimate = std::numeric_limits<double>::quiet_NaN();
        stats.std_error = std::numeric_limits<double>::quiet_NaN();
        stats.bias = std::numeric_limits<double>::quiet_NaN();
        return stats;
    }

    stats.mean_estimate = sum / static_cast<double>(n_included);
    stats.bias = stats.mean_estimate - truth;

    // Deviation about the known true offset: systematic estimator error is
    // part of the reported spread, not hidden by centering on the mean.
    double sum_sq = 0.0;
    for (int i = 0; i < n_trials; ++i) {
        if (included[static_cast<std::size_t>(i)]) {
            const double err = estimates[static_cast<std::size_t>(i)] - truth;
            sum_sq += err * err;
        }
    }
    stats.std_error = std::sqrt(sum_sq / static_cast<double>(n_included - 1));
    return stats;
}

std::vector<AmplitudeSweepRow> sweep_amplitude(const Scenario& base,
                                               const std::vector<double>& f_values,
                                               int n_trials, int n_workers)
{
    if (f_values.empty())
        throw std::invalid_argument("sweep_amplitude: f_values must be nonempty");

    std::vector<AmplitudeSweepRow> table;
    table.reserve(f_values.size());
    for (std::size_t row = 0; row < f_values.size(); ++row) {
        const double f = f_values[row];
        if (!(f > 0.0))
            throw std::invalid_argument("sweep_amplitude: all F values must be > 0");

        const PilotConfig pilot{f * base.eom.v_pi, base.pilot.f_d, base.pilot.phi_0,
                                base.pilot.n_periods};
        const Scenario sc = make_scenario(base.eom, pilot, base.detector,
                                          base.true_delta_v_norm,
                                          derive_trial_seed(base.seed, row));
        table.push_back({f, run_monte_carlo(sc, n_trials, n_workers)});
    }
    return table;
}

std::vector<BlackLevelRow> sweep_black_level(const EomParams& eom,
                                             const std::vector<double>& delta_v_norm_values,
                                             const std::vector<double>& f_values)
{
    if (delta_v_norm_values.empty() || f_values.empty())
        throw std::invalid_argument("sweep_black_level: value grids must be nonempty");

    std::vector<BlackLevelRow> table;
    table.reserve(delta_v_norm_values.size() * f_values.size());
    for (const double dvn : delta_v_norm_values) {
        for (const double f : f_values) {
            if (!(f >= 0.0))
                throw std::invalid_argument("sweep_black_level: F values must be >= 0");
            const double level = black_level(eom, dvn * eom.v_pi, f * eom.v_pi);
            table.push_back({dvn, f, level});
        }
    }
    return table;
}

} // namespace eombias
