#include "eombias/eom_model.hpp"

#include <cmath>
#include <numbers>

namespace eombias {

double optical_output_power(const EomParams& params, double v_c)
{
    const double arg = std::numbers::pi / params.v_pi * (params.v_0 - v_c);
    return params.p_in * (0.5 + params.f_ib * std::cos(arg));
}

double taylor_output_power(const EomParams& params, double delta_v, double v_d,
                           double omega_d, double phi_d, double t)
{
    // cos(pi + x) ~ -1 + x^2/2 around the minimum, with
    // x = pi/v_pi * (delta_v + v_d*sin(omega_d*t + phi_d)).
    const double scale = std::numbers::pi / params.v_pi;
    const double drive = delta_v + v_d * std::sin(omega_d * t + phi_d);
    const double x = scale * drive;
    return params.p_in * (0.5 + params.f_ib * (-1.0 + 0.5 * x * x));
}

HarmonicComponents harmonic_components(const EomParams& params, double delta_v,
                                       double v_d, double phi_d)
{
    const double scale2 = std::numbers::pi / params.v_pi * (std::numbers::pi / params.v_pi);
    const double half_fib = params.f_ib / 2.0;

    HarmonicComponents h;
    h.s_dc = params.p_in *
             (0.5 - params.f_ib +
              half_fib * scale2 * (0.5 * v_d * v_d + delta_v * delta_v));
    h.s_1fd = params.p_in * half_fib * scale2 * 2.0 * delta_v * v_d;
    h.s_2fd = params.p_in * half_fib * scale2 * 0.5 * v_d * v_d;
    h.phi_1fd = phi_d;
    h.phi_2fd = 2.0 * phi_d - std::numbers::pi / 2.0;
    return h;
}

} // namespace eombias
