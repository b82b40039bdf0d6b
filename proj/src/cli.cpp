#include "eombias/cli.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "eombias/errors.hpp"
#include "eombias/estimator.hpp"

namespace eombias::cli {

const char* command_name(Command c)
{
    switch (c) {
    case Command::Estimate: return "estimate";
    case Command::Predict: return "predict";
    case Command::SweepAmplitude: return "sweep-amplitude";
    case Command::BlackLevel: return "black-level";
    }
    return "?";
}

std::string format_g17(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::vector<double> parse_grid(const std::string& text, const std::string& flag)
{
    std::vector<double> values;
    std::string token;
    std::istringstream stream(text);
    while (std::getline(stream, token, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(token, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument(flag + ": invalid number '" + token + "'");
        }
        while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used])))
            ++used;
        if (used != token.size())
            throw std::invalid_argument(flag + ": invalid number '" + token + "'");
        values.push_back(v);
    }
    if (values.empty())
        throw std::invalid_argument(flag + ": empty grid");
    return values;
}

std::string join_grid(const std::vector<double>& values)
{
    std::string text;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0)
            text += ',';
        text += format_g17(values[i]);
    }
    return text;
}

// Scratch space for flags that need post-parse resolution.
struct PendingArgs {
    double f = 0.0;
    CLI::Option* f_opt = nullptr;
    std::string f_grid_text;
    std::string dv_grid_text;
};

void build_app(CLI::App& app, RunConfig& cfg, PendingArgs& pending)
{
    app.description("EOM minimum-point bias offset estimator and Monte Carlo harness");
    app.fallthrough();
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value config file; flags take precedence");

    app.add_option("--pin", cfg.pin, "optical input power [W]")->capture_default_str();
    app.add_option("--fib", cfg.fib, "optical imbalance factor")->capture_default_str();
    app.add_option("--vpi", cfg.vpi, "half-wave voltage [V]")->capture_default_str();
    app.add_option("--v0", cfg.v0, "zero-field phase-equivalent voltage [V]")->capture_default_str();
    app.add_option("--C", cfg.c, "opto-electric conversion factor [V/W]")->capture_default_str();
    app.add_option("--s0-sqrt", cfg.s0_sqrt, "noise density sqrt(S0) [V/sqrt(Hz)]")
        ->capture_default_str();
    app.add_option("--fs", cfg.fs, "sampling frequency [Hz]")->capture_default_str();
    app.add_option("--fd", cfg.fd, "pilot frequency [Hz]")->capture_default_str();
    app.add_option("--periods", cfg.periods, "pilot periods per burst")->capture_default_str();

    CLI::Option* vd_opt =
        app.add_option("--vd", cfg.vd, "pilot amplitude [V]")->capture_default_str();
    pending.f_opt = app.add_option("--F", pending.f, "pilot amplitude normalized to vpi");
    vd_opt->excludes(pending.f_opt);
    pending.f_opt->excludes(vd_opt);

    app.add_option("--dv-norm", cfg.dv_norm, "true normalized bias offset")->capture_default_str();
    app.add_option("--trials", cfg.trials, "Monte Carlo trials")->capture_default_str();
    app.add_option("--seed", cfg.seed, "master seed")->capture_default_str();
    app.add_option("--out", cfg.out, "CSV output path (default: stdout)");
    app.add_option("--f-grid", pending.f_grid_text,
                   "comma-separated normalized amplitudes for sweeps");
    app.add_option("--dv-grid", pending.dv_grid_text,
                   "comma-separated normalized offsets for black-level");

    app.add_subcommand("estimate", "simulate one noisy burst and print the offset estimate");
    app.add_subcommand("predict", "print the closed-form estimation-error standard deviation");
    app.add_subcommand("sweep-amplitude", "Monte Carlo error statistics over a pilot amplitude grid");
    app.add_subcommand("black-level", "analytic black level over offset and amplitude grids");
}

void finalize_config(const CLI::App& app, RunConfig& cfg, PendingArgs& pending)
{
    const auto parsed = app.get_subcommands();
    if (parsed.size() != 1)
        throw std::invalid_argument("exactly one subcommand required");
    const std::string name = parsed.front()->get_name();
    if (name == "estimate")
        cfg.command = Command::Estimate;
    else if (name == "predict")
        cfg.command = Command::Predict;
    else if (name == "sweep-amplitude")
        cfg.command = Command::SweepAmplitude;
    else if (name == "black-level")
        cfg.command = Command::BlackLevel;
    else
        throw std::invalid_argument("unknown subcommand " + name);

    if (pending.f_opt->count() > 0)
        cfg.vd = pending.f * cfg.vpi;
    if (!pending.f_grid_text.empty())
        cfg.f_grid = parse_grid(pending.f_grid_text, "--f-grid");
    if (!pending.dv_grid_text.empty())
        cfg.dv_grid = parse_grid(pending.dv_grid_text, "--dv-grid");
    if (cfg.trials < 2)
        throw std::invalid_argument("--trials must be >= 2");

    // Build every component once so unit errors surface now, and check the
    // pilot/sampling relationship before any run.
    (void)cfg.eom();
    (void)cfg.detector();
    validate_sampling(cfg.pilot(), cfg.fs);
}

int env_workers()
{
    const char* env = std::getenv("EOMBIAS_THREADS");
    if (env == nullptr)
        return 0;
    return std::atoi(env);
}

} // namespace

RunConfig parse_config(const std::vector<std::string>& args)
{
    CLI::App app{"eombias"};
    RunConfig cfg;
    PendingArgs pending;
    build_app(app, cfg, pending);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        throw std::invalid_argument(std::string("usage error: ") + e.what());
    }
    finalize_config(app, cfg, pending);
    return cfg;
}

std::string provenance_line(const RunConfig& cfg)
{
    std::ostringstream line;
    line << "# eombias command=" << command_name(cfg.command);
    line << " pin=" << format_g17(cfg.pin);
    line << " fib=" << format_g17(cfg.fib);
    line << " vpi=" << format_g17(cfg.vpi);
    line << " v0=" << format_g17(cfg.v0);
    line << " C=" << format_g17(cfg.c);
    line << " s0-sqrt=" << format_g17(cfg.s0_sqrt);
    line << " fs=" << format_g17(cfg.fs);
    line << " fd=" << format_g17(cfg.fd);
    line << " periods=" << cfg.periods;
    line << " vd=" << format_g17(cfg.vd);
    line << " dv-norm=" << format_g17(cfg.dv_norm);
    line << " trials=" << cfg.trials;
    line << " seed=" << cfg.seed;
    line << " f-grid=" << join_grid(cfg.f_grid);
    line << " dv-grid=" << join_grid(cfg.dv_grid);
    return line.str();
}

Provenance parse_provenance(const std::string& line)
{
    const std::string prefix = "# eombias ";
    if (line.rfind(prefix, 0) != 0)
        throw std::invalid_argument("parse_provenance: not a provenance line");

    Provenance prov;
    std::istringstream stream(line.substr(prefix.size()));
    std::string token;
    while (stream >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("parse_provenance: malformed token '" + token + "'");
        const std::string key = token.substr(0, eq);
        const std::string value = token.substr(eq + 1);
        if (key == "command") {
            prov.command = value;
        } else {
            // Quote values so config parsing never splits grid lists.
            prov.config_text += key + "=\"" + value + "\"\n";
        }
    }
    if (prov.command.empty())
        throw std::invalid_argument("parse_provenance: missing command");
    return prov;
}

std::string render_amplitude_csv(const std::vector<AmplitudeSweepRow>& table,
                                 const RunConfig& cfg)
{
    if (table.empty())
        throw std::invalid_argument("render_amplitude_csv: empty table");

    std::string text = provenance_line(cfg) + "\n";
    text += "F,std_error,predicted_std,bias,exclusions,n_trials\n";
    for (const auto& row : table) {
        text += format_g17(row.f);
        text += ',' + format_g17(row.stats.std_error);
        text += ',' + format_g17(row.stats.predicted_std);
        text += ',' + format_g17(row.stats.bias);
        text += ',' + std::to_string(row.stats.n_excluded);
        text += ',' + std::to_string(row.stats.n_trials);
        text += '\n';
    }
    return text;
}

std::string render_black_level_csv(const std::vector<BlackLevelRow>& table,
                                   const RunConfig& cfg)
{
    if (table.empty())
        throw std::invalid_argument("render_black_level_csv: empty table");

    std::string text = provenance_line(cfg) + "\n";
    text += "dv_norm,F,p_bl_rel_db\n";
    for (const auto& row : table) {
        double level = row.p_bl_rel_db;
        if (std::isfinite(level) && level < -200.0)
            level = -200.0;  // CSV floor; -inf stays the sentinel
        text += format_g17(row.delta_v_norm);
        text += ',' + format_g17(row.f);
        text += ',' + format_g17(level);
        text += '\n';
    }
    return text;
}

void emit_csv(const std::string& csv_text, const std::string& output_path)
{
    std::ofstream file(output_path, std::ios::binary);
    if (!file)
        throw std::runtime_error("emit_csv: cannot open '" + output_path + "' for writing");
    file << csv_text;
    file.flush();
    if (!file)
        throw std::runtime_error("emit_csv: write to '" + output_path + "' failed");
}

namespace {

void deliver(const std::string& csv_text, const RunConfig& cfg, std::ostream& out,
             std::ostream& err)
{
    if (cfg.out.empty()) {
        out << csv_text;
    } else {
        emit_csv(csv_text, cfg.out);
        err << "wrote " << cfg.out << "\n";
    }
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const int workers = env_workers();
    switch (cfg.command) {
    case Command::Estimate: {
        const Scenario sc = cfg.scenario();
        const SampledTrace trace = simulate_burst(sc.eom, sc.pilot, sc.detector, sc.v_hat_min,
                                                  derive_trial_seed(sc.seed, 0));
        const EstimateResult res = estimate_delta_v_norm(trace, cfg.f(), cfg.fd);
        out << "dv_norm_est = " << format_g17(res.delta_v_norm) << "\n";
        if (res.large_offset)
            err << "warning: estimate outside the half-period basin (|dv_norm| > 0.5)\n";
        return 0;
    }
    case Command::Predict: {
        const VariancePrediction p = predicted_error_variance(
            cfg.eom(), cfg.detector(), cfg.f(), cfg.pilot().duration(), cfg.dv_norm);
        out << "sigma = " << format_g17(p.sigma) << "\n";
        out << "sigma2 = " << format_g17(p.sigma2) << "\n";
        return 0;
    }
    case Command::SweepAmplitude: {
        const auto table = sweep_amplitude(cfg.scenario(), cfg.f_grid, cfg.trials, workers);
        deliver(render_amplitude_csv(table, cfg), cfg, out, err);
        return 0;
    }
    case Command::BlackLevel: {
        const auto table = sweep_black_level(cfg.eom(), cfg.dv_grid, cfg.f_grid);
        deliver(render_black_level_csv(table, cfg), cfg, out, err);
        return 0;
    }
    }
    return 1;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"eombias"};
    RunConfig cfg;
    PendingArgs pending;
    build_app(app, cfg, pending);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        finalize_config(app, cfg, pending);
        return execute(cfg, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace eombias::cli
