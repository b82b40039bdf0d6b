#pragma once

#include <stdexcept>

namespace eombias {

// Sinusoidal pilot tone applied on top of the bias voltage. A burst spans an
// integer count of full periods so that coherent DFT evaluation is possible
// by construction.
struct PilotConfig {
    double v_d;     // amplitude [V], >= 0
    double f_d;     // frequency [Hz], > 0
    double phi_0;   // chosen initial phase [rad]
    int n_periods;  // full periods per burst, >= 1

    PilotConfig(double v_d_, double f_d_, double phi_0_, int n_periods_)
        : v_d(v_d_), f_d(f_d_), phi_0(phi_0_), n_periods(n_periods_)
    {
        if (!(v_d >= 0.0))
            throw std::invalid_argument("PilotConfig: v_d must be >= 0");
        if (!(f_d > 0.0))
            throw std::invalid_argument("PilotConfig: f_d must be > 0");
        if (n_periods < 1)
            throw std::invalid_argument("PilotConfig: n_periods must be >= 1");
    }

    // Burst duration [s].
    double duration() const { return static_cast<double>(n_periods) / f_d; }
};

// Pilot amplitude normalized to the half-wave voltage, F = v_d / v_pi.
struct NormalizedAmplitude {
    double value;

    explicit NormalizedAmplitude(double f) : value(f)
    {
        if (!(f >= 0.0))
            throw std::invalid_argument("NormalizedAmplitude: F must be >= 0");
    }
};

// Pilot voltage at time t: -v_d * sin(2*pi*f_d*t + phi_d).
double pilot_waveform(const PilotConfig& cfg, double phi_d, double t);

// Total control voltage = bias estimate plus pilot (pilot carries its sign).
double compose_control_voltage(double v_hat_min, double pilot);

// Checks that a burst sampled at f_s is coherent: f_s above four times the
// pilot frequency (second harmonic below Nyquist) and an integral sample
// count per burst, with both tone bins strictly below N/2. Returns the DFT
// length N; throws NyquistViolation or NonIntegerPeriods otherwise.
int validate_sampling(const PilotConfig& cfg, double f_s);

} // namespace eombias
