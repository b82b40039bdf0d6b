#include "eombias/photodetector.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "eombias/pilot_signal.hpp"

namespace eombias {

double phase_from_delay(double delta_tau, double f_d)
{
    return delta_tau * 2.0 * std::numbers::pi * f_d;
}

SampledTrace detect(const Eigen::Ref<const Eigen::ArrayXd>& power_samples,
                    const DetectorConfig& cfg, std::uint64_t seed)
{
    if (power_samples.size() == 0)
        throw std::invalid_argument("detect: power_samples must be nonempty");

    SampledTrace trace;
    trace.samples = cfg.c * power_samples;
    trace.f_s = cfg.f_s;
    trace.t0 = 0.0;

    const double sigma_n = std::sqrt(cfg.noise_variance());
    if (sigma_n > 0.0) {
        std::mt19937_64 engine(seed);
        std::normal_distribution<double> gauss(0.0, sigma_n);
        for (Eigen::Index k = 0; k < trace.samples.size(); ++k)
            trace.samples[k] += gauss(engine);
    }
    return trace;
}

SampledTrace simulate_burst(const EomParams& eom, const PilotConfig& pilot,
                            const DetectorConfig& detector, double v_hat_min,
                            std::uint64_t seed)
{
    const int n_dft = validate_sampling(pilot, detector.f_s);

    const double delay_samples = detector.delta_tau * detector.f_s;
    const double rounded = std::round(delay_samples);
    if (std::abs(delay_samples - rounded) > 1e-9 * std::max(1.0, delay_samples)) {
        throw std::invalid_argument("simulate_burst: delta_tau = " +
                                    std::to_string(detector.delta_tau) +
                                    " s is not an integer number of samples");
    }
    const Eigen::Index delay = static_cast<Eigen::Index>(rounded);

    // Raw detector stream: index m sees the power emitted at t = (m - delay)/f_s.
    // The pilot is identically zero before its start at t = 0.
    Eigen::ArrayXd power(delay + n_dft);
    for (Eigen::Index m = 0; m < power.size(); ++m) {
        const Eigen::Index j = m - delay;
        double pilot_v = 0.0;
        if (j >= 0) {
            const double t = static_cast<double>(j) / detector.f_s;
            pilot_v = pilot_waveform(pilot, pilot.phi_0, t);
        }
        power[m] = optical_output_power(eom, compose_control_voltage(v_hat_min, pilot_v));
    }

    SampledTrace raw = detect(power, detector, seed);

    // Compensated axis t': drop the pre-pilot samples so the first retained
    // sample corresponds to the pilot start and the effective phase is phi_0.
    SampledTrace trace;
    trace.samples = raw.samples.segment(delay, n_dft);
    trace.f_s = detector.f_s;
    trace.t0 = 0.0;
    return trace;
}

} // namespace eombias
