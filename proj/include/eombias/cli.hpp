#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "eombias/sim_harness.hpp"

namespace eombias::cli {

enum class Command { Estimate, Predict, SweepAmplitude, BlackLevel };

const char* command_name(Command c);

// Fully resolved run configuration. Defaults are the reference parameter set
// used throughout the test suite: 1 W input, imbalance 0.5, conversion
// 0.1 V/W, 50 pV/sqrt(Hz) noise density, 5 MHz sampling, 0.5 MHz pilot,
// 25 periods per burst. v_pi defaults to 1 V and v_0 to 0 V; all normalized
// outputs are independent of both.
struct RunConfig {
    Command command = Command::Predict;

    double pin = 1.0;
    double fib = 0.5;
    double vpi = 1.0;
    double v0 = 0.0;

    double c = 0.1;
    double s0_sqrt = 50e-12;  // [V/sqrt(Hz)]
    double fs = 5e6;

    double fd = 0.5e6;
    int periods = 25;
    double vd = 1e-3;  // resolved pilot amplitude [V], from --vd or --F

    double dv_norm = 0.002;
    int trials = 2000;
    std::uint64_t seed = 12345;
    std::string out;  // CSV path; empty writes to stdout

    std::vector<double> f_grid = {1e-4, 2e-4, 5e-4, 1e-3, 2e-3, 5e-3, 1e-2, 2e-2, 5e-2};
    std::vector<double> dv_grid = {0.0, 0.002};

    EomParams eom() const { return {pin, vpi, v0, fib}; }
    PilotConfig pilot() const { return {vd, fd, 0.0, periods}; }
    DetectorConfig detector() const { return {c, s0_sqrt * s0_sqrt, fs, 0.0}; }
    Scenario scenario() const { return make_scenario(eom(), pilot(), detector(), dv_norm, seed); }
    NormalizedAmplitude f() const { return NormalizedAmplitude{vd / vpi}; }
};

// Parses command line arguments (without the program name). Flag values
// override config-file values, which override the defaults above. Usage
// errors (flag conflicts, invalid units) surface as std::invalid_argument;
// sampling-validation failures keep their typed SamplingError.
RunConfig parse_config(const std::vector<std::string>& args);

// 17-significant-digit formatting used for every CSV value; infinities print
// as "inf"/"-inf".
std::string format_g17(double v);

// Leading comment line recording the complete resolved configuration and
// seed. The output path is deliberately not part of it, so a reconstructed
// run can write elsewhere and still produce identical bytes.
std::string provenance_line(const RunConfig& cfg);

struct Provenance {
    std::string command;
    std::string config_text;  // flat key=value lines, ready for --config
};

// Inverse of provenance_line: recovers the subcommand and a config file body.
Provenance parse_provenance(const std::string& line);

std::string render_amplitude_csv(const std::vector<AmplitudeSweepRow>& table,
                                 const RunConfig& cfg);
std::string render_black_level_csv(const std::vector<BlackLevelRow>& table,
                                   const RunConfig& cfg);

// Writes csv_text to output_path (UTF-8, as-is); reports failures with the
// path in the message.
void emit_csv(const std::string& csv_text, const std::string& output_path);

// Full CLI entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace eombias::cli
