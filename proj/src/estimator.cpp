#include "eombias/estimator.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "eombias/errors.hpp"

namespace eombias {

std::complex<double> dft_bin(const Eigen::Ref<const Eigen::ArrayXd>& samples,
                             Eigen::Index k)
{
    const Eigen::Index n = samples.size();
    if (k < 0 || k >= n)
        throw std::out_of_range("dft_bin: bin index " + std::to_string(k) +
                                " outside [0, " + std::to_string(n) + ")");

    // Reduce k*m mod N in integer arithmetic before forming the angle; the
    // phasors then stay exact multiples of 2*pi/N regardless of trace length.
    const double step = -2.0 * std::numbers::pi / static_cast<double>(n);
    double re = 0.0;
    double im = 0.0;
    for (Eigen::Index m = 0; m < n; ++m) {
        const double angle = step * static_cast<double>((k * m) % n);
        re += samples[m] * std::cos(angle);
        im += samples[m] * std::sin(angle);
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    return {re * inv_n, im * inv_n};
}

namespace {

struct BinPair {
    std::complex<double> bin_1f;
    std::complex<double> bin_2f;
    double ratio;  // imag(bin_1f) / real(bin_2f)
};

// Shared core: locate the tone bins from the trace geometry, remove the
// sample mean (bins at k >= 1 are unchanged by a constant, and centering
// keeps a large DC term from polluting them through rounding), and form the
// harmonic ratio.
BinPair harmonic_ratio(const SampledTrace& trace, double f_d)
{
    const Eigen::Index n = trace.samples.size();
    if (n == 0)
        throw std::invalid_argument("estimator: empty trace");

    const double bin_exact = static_cast<double>(n) * f_d / trace.f_s;
    const auto z1 = static_cast<Eigen::Index>(std::llround(bin_exact));
    if (std::abs(bin_exact - static_cast<double>(z1)) > 1e-6 || z1 < 1 || 4 * z1 >= n)
        throw std::invalid_argument("estimator: trace is not coherently sampled at f_d");

    const Eigen::ArrayXd centered = trace.samples - trace.samples.mean();

    BinPair bins;
    bins.bin_1f = dft_bin(centered, z1);
    bins.bin_2f = dft_bin(centered, 2 * z1);

    const double eps_den = 1e3 * std::numeric_limits<double>::epsilon() *
                           trace.samples.abs().maxCoeff();
    if (!(std::abs(bins.bin_2f.real()) > eps_den))
        throw DegenerateDenominator("estimator: |real(bin_2f)| = " +
                                    std::to_string(std::abs(bins.bin_2f.real())) +
                                    " below threshold; pilot too small or absent");

    bins.ratio = bins.bin_1f.imag() / bins.bin_2f.real();
    return bins;
}

} // namespace

EstimateResult estimate_delta_v(const SampledTrace& trace, double v_d, double f_d,
                                double v_pi)
{
    if (!(v_d > 0.0))
        throw std::invalid_argument("estimate_delta_v: v_d must be > 0");

    const BinPair bins = harmonic_ratio(trace, f_d);

    EstimateResult res;
    res.bin_1f = bins.bin_1f;
    res.bin_2f = bins.bin_2f;
    res.delta_v = bins.ratio * v_d / 4.0;
    if (std::isfinite(v_pi) && v_pi > 0.0) {
        res.delta_v_norm = res.delta_v / v_pi;
        res.large_offset = std::abs(res.delta_v) > v_pi / 2.0;
    }
    return res;
}

EstimateResult estimate_delta_v_norm(const SampledTrace& trace, NormalizedAmplitude f,
                                     double f_d)
{
    if (!(f.value > 0.0))
        throw std::invalid_argument("estimate_delta_v_norm: F must be > 0");

    const BinPair bins = harmonic_ratio(trace, f_d);

    EstimateResult res;
    res.bin_1f = bins.bin_1f;
    res.bin_2f = bins.bin_2f;
    res.delta_v_norm = bins.ratio * f.value / 4.0;
    res.large_offset = std::abs(res.delta_v_norm) > 0.5;
    return res;
}

} // namespace eombias
