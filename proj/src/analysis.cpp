#include "eombias/analysis.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "eombias/errors.hpp"

namespace eombias {

MomentSet moment_set(const EomParams& eom, const DetectorConfig& detector,
                     NormalizedAmplitude f, double t_d, double delta_v)
{
    if (!(t_d > 0.0))
        throw std::invalid_argument("moment_set: t_d must be > 0");

    const double f2 = f.value * f.value;
    const double pi2 = std::numbers::pi * std::numbers::pi;

    MomentSet m;
    m.var_num = f2 * detector.s_0 / (4.0 * t_d);
    m.var_den = 4.0 * detector.s_0 / t_d;
    m.mu_den = -(pi2 / 2.0) * detector.c * eom.p_in * eom.f_ib * f2;
    m.mu_num = m.mu_den * (delta_v / eom.v_pi);
    return m;
}

double ratio_variance_approx(const MomentSet& m)
{
    if (m.mu_den == 0.0)
        throw ZeroDenominatorMean("ratio_variance_approx: mu_den is zero");

    // mu_num^2/mu_den^2 * (var_num/mu_num^2 + var_den/mu_den^2), expanded so
    // the mu_num = 0 limit needs no special case.
    const double den2 = m.mu_den * m.mu_den;
    return m.var_num / den2 + (m.mu_num * m.mu_num) * m.var_den / (den2 * den2);
}

VariancePrediction predicted_error_variance(const EomParams& eom,
                                            const DetectorConfig& detector,
                                            NormalizedAmplitude f, double t_d,
                                            double delta_v_norm)
{
    if (!(t_d > 0.0))
        throw std::invalid_argument("predicted_error_variance: t_d must be > 0");
    if (!(f.value > 0.0))
        throw std::invalid_argument("predicted_error_variance: F must be > 0");

    const double f2 = f.value * f.value;
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double gain = pi2 * eom.p_in * eom.f_ib * f2;

    VariancePrediction p;
    p.sigma2 = 1.0 / t_d * detector.s_0 / (detector.c * detector.c) *
               (f2 + 16.0 * delta_v_norm * delta_v_norm) / (gain * gain);
    p.sigma = std::sqrt(p.sigma2);
    return p;
}

namespace {

// Exact output power at offset u from the minimum, written as
// (1/2 - f_ib) + 2*f_ib*sin^2(u*pi/(2*v_pi)) so near-null values keep full
// precision instead of cancelling in 1/2 - f_ib*cos.
double power_at_offset(const EomParams& eom, double u)
{
    const double s = std::sin(std::numbers::pi * u / (2.0 * eom.v_pi));
    return eom.p_in * ((0.5 - eom.f_ib) + 2.0 * eom.f_ib * s * s);
}

} // namespace

double black_level(const EomParams& eom, double delta_v, double v_d)
{
    if (!(v_d >= 0.0))
        throw std::invalid_argument("black_level: v_d must be >= 0");

    const double u_peak = std::abs(delta_v) + v_d;
    double p_max = 0.0;
    if (u_peak < eom.v_pi) {
        // Output power grows monotonically with |delta_v + v_d*sin| inside one
        // basin, so the peak sits at the voltage extreme.
        p_max = power_at_offset(eom, u_peak);
    } else {
        // Swing leaves the basin; scan one pilot period.
        constexpr int kGridPoints = 200001;
        for (int i = 0; i < kGridPoints; ++i) {
            const double theta = 2.0 * std::numbers::pi * i / (kGridPoints - 1);
            p_max = std::max(p_max, power_at_offset(eom, delta_v + v_d * std::sin(theta)));
        }
    }

    if (p_max <= 0.0)
        return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(p_max / eom.p_in);
}

} // namespace eombias
