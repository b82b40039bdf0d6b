#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Core>

#include "eombias/eom_model.hpp"
#include "eombias/errors.hpp"
#include "eombias/estimator.hpp"
#include "eombias/photodetector.hpp"
#include "eombias/pilot_signal.hpp"

using namespace eombias;
using Catch::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

DetectorConfig quiet_detector(double delta_tau = 0.0)
{
    return {0.1, 0.0, 5e6, delta_tau};
}

DetectorConfig reference_detector(double delta_tau = 0.0)
{
    return {0.1, 50e-12 * 50e-12, 5e6, delta_tau};
}

} // namespace

TEST_CASE("detector config invariants")
{
    CHECK_THROWS_AS(DetectorConfig(0.0, 0.0, 5e6, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(DetectorConfig(0.1, -1.0, 5e6, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(DetectorConfig(0.1, 0.0, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(DetectorConfig(0.1, 0.0, 5e6, -1e-6), std::invalid_argument);
    CHECK(reference_detector().noise_variance() ==
          Approx(50e-12 * 50e-12 * 5e6 / 2.0).epsilon(1e-15));
}

TEST_CASE("delay phase")
{
    CHECK(phase_from_delay(0.0, 0.5e6) == 0.0);
    CHECK(phase_from_delay(1.0 / (4.0 * 0.7e6), 0.7e6) == Approx(kPi / 2.0).epsilon(1e-12));
    CHECK(phase_from_delay(1e-6, 0.5e6) == Approx(kPi).epsilon(1e-12));
}

TEST_CASE("noise-free conversion")
{
    Eigen::ArrayXd p(1);
    p << 1.0;
    const SampledTrace trace = detect(p, quiet_detector(), 99);
    REQUIRE(trace.samples.size() == 1);
    CHECK(trace.samples[0] == 0.1);
    CHECK(trace.f_s == 5e6);
}

TEST_CASE("per-sample noise level matches the configured density")
{
    const DetectorConfig cfg = reference_detector();
    const Eigen::ArrayXd zeros = Eigen::ArrayXd::Zero(2'000'000);
    const SampledTrace trace = detect(zeros, cfg, 2024);

    const double mean = trace.samples.mean();
    const double var = (trace.samples - mean).square().sum() / (trace.samples.size() - 1);
    const double measured_std = std::sqrt(var);
    CHECK(measured_std == Approx(7.905694150420948e-08).epsilon(0.01));
}

TEST_CASE("detection is deterministic in the seed")
{
    Eigen::ArrayXd p = Eigen::ArrayXd::LinSpaced(1000, 0.0, 1e-3);
    const SampledTrace a = detect(p, reference_detector(), 7);
    const SampledTrace b = detect(p, reference_detector(), 7);
    const SampledTrace c = detect(p, reference_detector(), 8);
    CHECK((a.samples == b.samples).all());
    CHECK(!(a.samples == c.samples).all());
}

TEST_CASE("detection is linear up to rounding")
{
    const DetectorConfig cfg = reference_detector();
    Eigen::ArrayXd p(5);
    p << 0.1, 0.2, 0.0, 0.5, 0.25;
    const double a = 3.0;

    const SampledTrace with_signal = detect(a * p, cfg, 31);
    const SampledTrace noise_only = detect(0.0 * p, cfg, 31);
    for (Eigen::Index k = 0; k < p.size(); ++k) {
        const double diff = with_signal.samples[k] - noise_only.samples[k];
        const double expect = a * cfg.c * p[k];
        CHECK(std::abs(diff - expect) <=
              4.0 * std::numeric_limits<double>::epsilon() *
                  (std::abs(expect) + std::abs(noise_only.samples[k])));
    }
}

TEST_CASE("noise samples are white")
{
    const DetectorConfig cfg = reference_detector();
    const Eigen::Index n = 1 << 20;
    const SampledTrace trace = detect(Eigen::ArrayXd::Zero(n), cfg, 5150);
    const Eigen::ArrayXd x = trace.samples - trace.samples.mean();
    const double denom = x.square().sum();
    for (Eigen::Index lag = 1; lag <= 5; ++lag) {
        const double corr = (x.head(n - lag) * x.tail(n - lag)).sum() / denom;
        CHECK(std::abs(corr) < 5.0 / std::sqrt(static_cast<double>(n)));
    }
}

TEST_CASE("burst at the exact null with no pilot is identically zero")
{
    for (const double v_pi : {1.0, 3.3}) {
        const EomParams eom{1.0, v_pi, 0.0, 0.5};
        const PilotConfig pilot{0.0, 0.5e6, 0.0, 25};
        const SampledTrace trace =
            simulate_burst(eom, pilot, quiet_detector(), eom.v_0 - eom.v_pi, 1);
        REQUIRE(trace.samples.size() == 250);
        CHECK(trace.samples.abs().maxCoeff() == 0.0);
    }
}

TEST_CASE("integer-sample delay is fully compensated")
{
    const EomParams eom{1.0, 1.0, 0.0, 0.5};
    const PilotConfig pilot{1e-3, 0.5e6, 0.0, 25};
    const double v_hat = eom.v_0 - eom.v_pi - 0.002;

    const SampledTrace direct = simulate_burst(eom, pilot, quiet_detector(0.0), v_hat, 3);
    for (const int d : {1, 3, 17}) {
        const SampledTrace delayed =
            simulate_burst(eom, pilot, quiet_detector(d / 5e6), v_hat, 3);
        REQUIRE(delayed.samples.size() == direct.samples.size());
        CHECK((delayed.samples == direct.samples).all());
        CHECK((delayed.samples - direct.samples).abs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("fractional-sample delay is rejected")
{
    const EomParams eom{1.0, 1.0, 0.0, 0.5};
    const PilotConfig pilot{1e-3, 0.5e6, 0.0, 25};
    CHECK_THROWS_AS(
        simulate_burst(eom, pilot, quiet_detector(0.5 / 5e6), eom.v_0 - eom.v_pi, 3),
        std::invalid_argument);
}

TEST_CASE("burst is deterministic and propagates sampling errors")
{
    const EomParams eom{1.0, 1.0, 0.0, 0.5};
    const PilotConfig pilot{1e-3, 0.5e6, 0.0, 25};
    const double v_hat = eom.v_0 - eom.v_pi - 0.002;

    const SampledTrace a = simulate_burst(eom, pilot, reference_detector(), v_hat, 77);
    const SampledTrace b = simulate_burst(eom, pilot, reference_detector(), v_hat, 77);
    CHECK((a.samples == b.samples).all());

    const DetectorConfig bad{0.1, 0.0, 1.9e6, 0.0};
    CHECK_THROWS_AS(simulate_burst(eom, pilot, bad, v_hat, 77), NyquistViolation);
}

TEST_CASE("noise-free burst spectrum matches the harmonic components")
{
    const EomParams eom{1.0, 1.0, 0.0, 0.5};
    const double delta_v = 0.002;
    const PilotConfig pilot{1e-3, 0.5e6, 0.0, 25};
    const DetectorConfig det = quiet_detector();
    const double v_hat = eom.v_0 - eom.v_pi - delta_v;

    const SampledTrace trace = simulate_burst(eom, pilot, det, v_hat, 1);
    const HarmonicComponents h = harmonic_components(eom, delta_v, pilot.v_d, 0.0);

    const Eigen::ArrayXd centered = trace.samples - trace.samples.mean();
    const std::complex<double> b1 = dft_bin(centered, 25);
    const std::complex<double> b2 = dft_bin(centered, 50);

    // Exact-model bins agree with the quadratic-model amplitudes up to the
    // quartic remainder; 1e-9 W comfortably bounds it at these drive levels.
    CHECK(std::abs(2.0 * std::abs(b1) / det.c - h.s_1fd) <= 1e-9);
    CHECK(std::abs(2.0 * std::abs(b2) / det.c - h.s_2fd) <= 1e-9);
    // Signs: both bins sit on the negative side for positive offsets.
    CHECK(b1.imag() < 0.0);
    CHECK(b2.real() < 0.0);
}
