#include "eombias/pilot_signal.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "eombias/errors.hpp"

namespace eombias {

double pilot_waveform(const PilotConfig& cfg, double phi_d, double t)
{
    return -cfg.v_d * std::sin(2.0 * std::numbers::pi * cfg.f_d * t + phi_d);
}

double compose_control_voltage(double v_hat_min, double pilot)
{
    return v_hat_min + pilot;
}

int validate_sampling(const PilotConfig& cfg, double f_s)
{
    if (!(f_s > 4.0 * cfg.f_d)) {
        throw NyquistViolation("validate_sampling: f_s = " + std::to_string(f_s) +
                               " Hz must exceed 4*f_d = " + std::to_string(4.0 * cfg.f_d) +
                               " Hz (second harmonic at Nyquist)");
    }

    const double samples_per_burst = f_s / cfg.f_d * static_cast<double>(cfg.n_periods);
    const double rounded = std::round(samples_per_burst);
    if (std::abs(samples_per_burst - rounded) > 1e-9 * std::max(1.0, samples_per_burst)) {
        throw NonIntegerPeriods("validate_sampling: f_s/f_d * n_periods = " +
                                std::to_string(samples_per_burst) +
                                " is not an integer sample count");
    }

    const int n_dft = static_cast<int>(rounded);
    // With N = f_s*n_periods/f_d integral, the tone bins are exactly
    // z_1 = n_periods and z_2 = 2*n_periods; both must sit strictly below N/2.
    const int z2 = 2 * cfg.n_periods;
    if (!(2 * z2 < n_dft)) {
        throw NyquistViolation("validate_sampling: second-harmonic bin " +
                               std::to_string(z2) + " not strictly below N/2 with N = " +
                               std::to_string(n_dft));
    }
    return n_dft;
}

} // namespace eombias
