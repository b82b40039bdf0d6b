#pragma once

#include <stdexcept>

namespace eombias {

// Physical constants of the Mach-Zehnder modulator model. Voltages in volts,
// powers in watts. The transfer function is periodic in the control voltage
// with period 2*v_pi; its minima sit at v_0 - (2m+1)*v_pi.
struct EomParams {
    double p_in;  // optical input power [W]
    double v_pi;  // half-wave voltage [V]
    double v_0;   // zero-field phase-equivalent voltage [V]
    double f_ib;  // optical imbalance factor, 0 < f_ib <= 0.5

    EomParams(double p_in_, double v_pi_, double v_0_, double f_ib_)
        : p_in(p_in_), v_pi(v_pi_), v_0(v_0_), f_ib(f_ib_)
    {
        if (!(p_in > 0.0))
            throw std::invalid_argument("EomParams: p_in must be > 0");
        if (!(v_pi > 0.0))
            throw std::invalid_argument("EomParams: v_pi must be > 0");
        if (!(f_ib > 0.0) || !(f_ib <= 0.5))
            throw std::invalid_argument("EomParams: f_ib must be in (0, 0.5]");
    }
};

// Amplitudes [W] and phases [rad] of the DC, first- and second-harmonic
// components of the quadratic-model output power under a sinusoidal pilot.
struct HarmonicComponents {
    double s_dc = 0.0;
    double s_1fd = 0.0;
    double s_2fd = 0.0;
    double phi_1fd = 0.0;
    double phi_2fd = 0.0;
};

// Exact transfer function: output power at control voltage v_c.
double optical_output_power(const EomParams& params, double v_c);

// Quadratic approximation of the output power around the minimum at
// v_0 - v_pi, for bias offset delta_v and pilot -v_d*sin(omega_d*t + phi_d).
// Accurate for |delta_v|/v_pi and v_d/v_pi well below one.
double taylor_output_power(const EomParams& params, double delta_v, double v_d,
                           double omega_d, double phi_d, double t);

// Spectral decomposition of the quadratic-model output power.
HarmonicComponents harmonic_components(const EomParams& params, double delta_v,
                                       double v_d, double phi_d);

} // namespace eombias
