#pragma once

#include <stdexcept>
#include <string>

namespace eombias {

// Base for pilot/sampling configuration rejections.
class SamplingError : public std::runtime_error {
public:
    explicit SamplingError(const std::string& msg) : std::runtime_error(msg) {}
};

// Burst does not contain an integer number of pilot periods at the given rate.
class NonIntegerPeriods final : public SamplingError {
public:
    explicit NonIntegerPeriods(const std::string& msg) : SamplingError(msg) {}
};

// Sampling rate too low for the second-harmonic tone.
class NyquistViolation final : public SamplingError {
public:
    explicit NyquistViolation(const std::string& msg) : SamplingError(msg) {}
};

// Second-harmonic bin too small to divide by; pilot absent or buried.
class DegenerateDenominator final : public std::runtime_error {
public:
    explicit DegenerateDenominator(const std::string& msg) : std::runtime_error(msg) {}
};

// Ratio-variance approximation undefined when the denominator mean vanishes.
class ZeroDenominatorMean final : public std::runtime_error {
public:
    explicit ZeroDenominatorMean(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace eombias
