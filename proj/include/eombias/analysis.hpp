#pragma once

#include "eombias/eom_model.hpp"
#include "eombias/photodetector.hpp"
#include "eombias/pilot_signal.hpp"

namespace eombias {

// First and second moments of the estimator's numerator and denominator,
// treated as independent normal variables. Means come from the deterministic
// signal bins, variances from the noise bins alone.
struct MomentSet {
    double mu_num = 0.0;   // [V]
    double mu_den = 0.0;   // [V]
    double var_num = 0.0;  // [V^2]
    double var_den = 0.0;  // [V^2]
};

// Closed-form variance of the normalized offset estimate and its root.
struct VariancePrediction {
    double sigma2 = 0.0;
    double sigma = 0.0;
};

// Moments of numerator F*imag(bin_1f) and denominator 4*real(bin_2f) for a
// burst of duration t_d at true offset delta_v.
MomentSet moment_set(const EomParams& eom, const DetectorConfig& detector,
                     NormalizedAmplitude f, double t_d, double delta_v);

// Normal approximation of the ratio-distribution variance,
// mu_num^2/mu_den^2 * (var_num/mu_num^2 + var_den/mu_den^2), evaluated in a
// form that stays finite at mu_num = 0. Throws ZeroDenominatorMean when
// mu_den = 0.
double ratio_variance_approx(const MomentSet& m);

// Closed-form estimation-error variance of the normalized offset:
// 1/t_d * s_0/c^2 * (F^2 + 16*dv_norm^2) / (pi^2*p_in*f_ib*F^2)^2.
VariancePrediction predicted_error_variance(const EomParams& eom,
                                            const DetectorConfig& detector,
                                            NormalizedAmplitude f, double t_d,
                                            double delta_v_norm);

// Peak optical output power over one pilot period, relative to p_in, in dB.
// Returns -infinity when the peak power is exactly zero (perfect null, no
// pilot, f_ib = 0.5). Evaluated on the exact transfer function; the peak is
// taken analytically at the voltage extremes when |delta_v| + v_d stays
// within one basin, by dense grid search otherwise.
double black_level(const EomParams& eom, double delta_v, double v_d);

} // namespace eombias
