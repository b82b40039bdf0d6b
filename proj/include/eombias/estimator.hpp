#pragma once

#include <Eigen/Core>

#include <complex>
#include <limits>

#include "eombias/photodetector.hpp"
#include "eombias/pilot_signal.hpp"

namespace eombias {

// Offset estimate computed from the ratio of the imaginary first-harmonic
// bin to the real second-harmonic bin. delta_v or delta_v_norm is NaN when
// the corresponding scale (v_d resp. F) was not supplied. large_offset flags
// estimates outside the half-period basin of the targeted minimum; it can
// only be assessed when the half-wave voltage is known.
struct EstimateResult {
    double delta_v = std::numeric_limits<double>::quiet_NaN();       // [V]
    double delta_v_norm = std::numeric_limits<double>::quiet_NaN();  // delta_v / v_pi
    std::complex<double> bin_1f{0.0, 0.0};                           // [V]
    std::complex<double> bin_2f{0.0, 0.0};                           // [V]
    bool large_offset = false;
};

// Normalized single-bin DFT, (1/N) * sum_n x[n] * exp(-i*2*pi*k*n/N).
// Throws std::out_of_range unless 0 <= k < N.
std::complex<double> dft_bin(const Eigen::Ref<const Eigen::ArrayXd>& samples,
                             Eigen::Index k);

// Offset estimate in volts: imag(bin_1f)/real(bin_2f) * v_d/4. Supplying
// v_pi additionally fills delta_v_norm and the large_offset flag. Throws
// DegenerateDenominator when the second-harmonic bin is numerically
// indistinguishable from zero.
EstimateResult estimate_delta_v(const SampledTrace& trace, double v_d, double f_d,
                                double v_pi = std::numeric_limits<double>::quiet_NaN());

// Normalized offset estimate: imag(bin_1f)/real(bin_2f) * F/4. Needs no
// physical EOM or detector parameters beyond the normalized pilot amplitude.
EstimateResult estimate_delta_v_norm(const SampledTrace& trace, NormalizedAmplitude f,
                                     double f_d);

} // namespace eombias
