#pragma once

#include <cstdint>
#include <vector>

#include "eombias/analysis.hpp"
#include "eombias/eom_model.hpp"
#include "eombias/photodetector.hpp"
#include "eombias/pilot_signal.hpp"

namespace eombias {

// One complete experiment: modulator, pilot, detector, the true normalized
// offset, the bias the pilot rides on, and the master seed. v_hat_min is
// always v_0 - v_pi - true_delta_v_norm*v_pi so the offset definition and the
// applied bias stay consistent; build instances through make_scenario.
struct Scenario {
    EomParams eom;
    PilotConfig pilot;
    DetectorConfig detector;
    double true_delta_v_norm;
    double v_hat_min;
    std::uint64_t seed;
};

// Aggregated Monte Carlo statistics of the normalized offset estimate.
// std_error measures deviation about the known true offset, so a systematic
// estimator error shows up here as well as in bias.
struct ErrorStats {
    int n_trials = 0;        // trials included in the statistics
    double mean_estimate = 0.0;
    double std_error = 0.0;
    double bias = 0.0;       // mean_estimate - true_delta_v_norm
    double predicted_std = 0.0;
    int n_excluded = 0;      // degenerate-denominator trials
};

struct AmplitudeSweepRow {
    double f = 0.0;  // normalized pilot amplitude of this row
    ErrorStats stats;
};

struct BlackLevelRow {
    double delta_v_norm = 0.0;
    double f = 0.0;
    double p_bl_rel_db = 0.0;
};

// Counter-based per-trial seed derivation (SplitMix64 finalizer applied to
// base + odd-constant*(counter+1)). Trials are independent streams and their
// order never matters, so workers can be assigned arbitrary index ranges.
std::uint64_t derive_trial_seed(std::uint64_t base, std::uint64_t counter);

// Validates sampling and computes v_hat_min from the true offset.
Scenario make_scenario(const EomParams& eom, const PilotConfig& pilot,
                       const DetectorConfig& detector, double true_delta_v_norm,
                       std::uint64_t seed);

// Runs n_trials independent noisy bursts through the exact-model chain and
// estimates each one. Degenerate-denominator trials are excluded and counted,
// never resampled. Results are bit-identical for fixed (scenario, n_trials)
// regardless of n_workers (0 = hardware concurrency).
ErrorStats run_monte_carlo(const Scenario& sc, int n_trials, int n_workers = 0);

// One run_monte_carlo row per normalized amplitude, v_d = F*v_pi substituted,
// rows ordered as given. Row scenarios get seeds derived from the base seed
// by the same counter scheme.
std::vector<AmplitudeSweepRow> sweep_amplitude(const Scenario& base,
                                               const std::vector<double>& f_values,
                                               int n_trials, int n_workers = 0);

// Analytic black level per (delta_v_norm, F) cell; no Monte Carlo involved.
std::vector<BlackLevelRow> sweep_black_level(const EomParams& eom,
                                             const std::vector<double>& delta_v_norm_values,
                                             const std::vector<double>& f_values);

} // namespace eombias
