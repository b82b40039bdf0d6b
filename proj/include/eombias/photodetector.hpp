#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>

#include "eombias/eom_model.hpp"
#include "eombias/pilot_signal.hpp"

namespace eombias {

// Photodetector chain: linear opto-electric conversion plus additive white
// Gaussian noise, sampled at f_s. delta_tau models the propagation delay of
// the feedback signal relative to the pilot.
struct DetectorConfig {
    double c;          // conversion factor [V/W], > 0
    double s_0;        // noise power spectral density [V^2/Hz], >= 0
    double f_s;        // sampling frequency [Hz], > 0
    double delta_tau;  // propagation delay [s], >= 0

    DetectorConfig(double c_, double s_0_, double f_s_, double delta_tau_)
        : c(c_), s_0(s_0_), f_s(f_s_), delta_tau(delta_tau_)
    {
        if (!(c > 0.0))
            throw std::invalid_argument("DetectorConfig: c must be > 0");
        if (!(s_0 >= 0.0))
            throw std::invalid_argument("DetectorConfig: s_0 must be >= 0");
        if (!(f_s > 0.0))
            throw std::invalid_argument("DetectorConfig: f_s must be > 0");
        if (!(delta_tau >= 0.0))
            throw std::invalid_argument("DetectorConfig: delta_tau must be >= 0");
    }

    // Per-sample noise variance after ideal band limiting, s_0 * f_s / 2.
    double noise_variance() const { return s_0 * f_s / 2.0; }
};

// Sampled detector voltages on the delay-compensated time axis t', where
// t0 is the time of the first sample.
struct SampledTrace {
    Eigen::ArrayXd samples;  // [V]
    double f_s = 0.0;        // [Hz]
    double t0 = 0.0;         // [s]
};

// Pilot phase accumulated over a propagation delay: delta_tau * 2*pi*f_d.
double phase_from_delay(double delta_tau, double f_d);

// Converts optical power samples to voltages, c*p[k] + n[k], with n[k]
// independent zero-mean Gaussian draws of variance s_0*f_s/2 generated
// deterministically from the seed.
SampledTrace detect(const Eigen::Ref<const Eigen::ArrayXd>& power_samples,
                    const DetectorConfig& cfg, std::uint64_t seed);

// Full burst through the exact transfer function: pilot starting at t = 0 on
// the bias v_hat_min, detected after an integer-sample propagation delay, and
// returned on the compensated axis so the effective pilot phase equals
// pilot.phi_0. The delay must be an integral number of samples.
SampledTrace simulate_burst(const EomParams& eom, const PilotConfig& pilot,
                            const DetectorConfig& detector, double v_hat_min,
                            std::uint64_t seed);

} // namespace eombias
