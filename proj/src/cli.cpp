#include "pbg/cli.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "pbg/bloch.hpp"
#include "pbg/config.hpp"
#include "pbg/errors.hpp"
#include "pbg/kernels.hpp"
#include "pbg/oracles.hpp"
#include "pbg/report.hpp"
#include "pbg/spectra.hpp"
#include "pbg/validation.hpp"

namespace pbg {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::vector<std::string> header_comments(const RunConfig& cfg, const ModelParams& p) {
    std::string first = fmt::format("pbgfluor {} {}", version_string, command_name(cfg.command));
    if (cfg.preset) first += " preset=" + *cfg.preset;
    first += " | " + describe_parameters(p, cfg.grid);
    return {first, std::string("units: ") + units_note};
}

void emit(std::ostream& out, const fs::path& path, const std::string& content) {
    write_file(path, content);
    out << "wrote " << path.string() << '\n';
}

fs::path svg_path(fs::path p) { return p.replace_extension(".svg"); }

int cmd_kernel(const RunConfig& cfg, std::ostream& out) {
    const Reservoir res(cfg.params);
    Column w{"omega", cfg.grid.samples()}, re{"re_G", {}}, im{"im_G", {}}, mag{"abs_G", {}}, arg{"arg_G", {}};
    for (double x : w.values) {
        const cplx g = res.g(x);
        re.values.push_back(g.real());
        im.values.push_back(g.imag());
        mag.values.push_back(std::abs(g));
        arg.values.push_back(std::arg(g));
    }
    auto comments = header_comments(cfg, cfg.params);
    comments.push_back("G = frequency transform of the memory function; sqrt(x) = -i sqrt(|x|) for x < 0");
    const std::vector<Column> cols{w, re, im, mag, arg};
    emit(out, cfg.out, csv_document(comments, cols));
    if (cfg.plot) {
        const std::vector<Column> series{mag, re, im};
        emit(out, svg_path(cfg.out), svg_document("memory kernel", w.values, series));
    }
    return 0;
}

int cmd_steady(const RunConfig& cfg, std::ostream& out) {
    const Reservoir res(cfg.params);
    const SteadyState ss = steady_state(cfg.params, res);
    json j;
    j["version"] = version_string;
    j["command"] = "steady";
    j["units"] = units_note;
    j["params"] = params_json(cfg.params);
    j["steady_state"] = {{"s_minus", complex_json(ss.s_minus)},
                         {"s_plus", complex_json(ss.s_plus)},
                         {"s_z", complex_json(ss.s_z)}};
    j["coherent_weight"] = std::norm(ss.s_minus);
    json diag;
    diag["residual"] = steady_state_residual(cfg.params, res, ss);
    diag["g0"] = complex_json(res.g(0.0));
    diag["gc0"] = complex_json(res.gc(0.0));
    diag["excited_population"] = 0.5 * (1.0 + ss.s_z.real());
    const double ratio = oracle::memory_timescale_ratio(cfg.params);
    diag["memory_timescale_ratio"] = std::isfinite(ratio) ? json(ratio) : json(nullptr);
    j["diagnostics"] = diag;
    emit(out, cfg.out, json_document(j));
    return 0;
}

Column intensity_column(const ModelParams& p, const FrequencyGrid& grid, double& coherent) {
    auto spec = intensity_spectrum(p, grid);
    coherent = spec.coherent_weight;
    return {"S", std::move(spec.values)};
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
    double coherent = 0.0;
    const Column w{"omega", cfg.grid.samples()};
    const Column s = intensity_column(cfg.params, cfg.grid, coherent);
    auto comments = header_comments(cfg, cfg.params);
    comments.push_back("coherent_weight=" + format_number(coherent) +
                       " (elastic line at omega = 0, not included in S)");
    const std::vector<Column> cols{w, s};
    emit(out, cfg.out, csv_document(comments, cols));
    if (cfg.plot) {
        const std::vector<Column> series{s};
        emit(out, svg_path(cfg.out), svg_document("intensity spectrum", w.values, series));
    }
    return 0;
}

int cmd_quadrature(const RunConfig& cfg, std::ostream& out) {
    const SpectrumTable table = compute_spectra(cfg.params, cfg.grid, cfg.thetas);
    std::vector<Column> cols{{"omega", table.omega}};
    json sidecar;
    sidecar["version"] = version_string;
    sidecar["units"] = units_note;
    sidecar["params"] = params_json(cfg.params);
    sidecar["grid"] = grid_json(cfg.grid);
    sidecar["squeeze_tol"] = cfg.squeeze_tol;
    sidecar["quadratures"] = json::array();
    for (const auto& q : table.s_theta) {
        cols.push_back({fmt::format("S_theta={}", q.theta), q.values});
        json intervals = json::array();
        for (const auto& iv : detect_squeezing(table.omega, q.values, cfg.squeeze_tol))
            intervals.push_back({{"omega_start", iv.omega_start},
                                 {"omega_end", iv.omega_end},
                                 {"min_value", iv.min_value},
                                 {"omega_at_min", iv.omega_at_min}});
        sidecar["quadratures"].push_back({{"theta", q.theta}, {"intervals", intervals}});
    }
    emit(out, cfg.out, csv_document(header_comments(cfg, cfg.params), cols));
    fs::path side = cfg.out;
    side.replace_extension(".squeezing.json");
    emit(out, side, json_document(sidecar));
    if (cfg.plot) {
        const std::vector<Column> series(cols.begin() + 1, cols.end());
        emit(out, svg_path(cfg.out), svg_document("quadrature spectra", table.omega, series));
    }
    return 0;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
    std::error_code ec;
    fs::create_directories(cfg.out, ec);
    if (ec) throw ConfigError("out", "cannot create directory '" + cfg.out.string() + "'");
    const Column w{"omega", cfg.grid.samples()};
    std::vector<Column> series;
    for (double offset : cfg.offsets) {
        ModelParams p = cfg.params;
        p.omega_a = p.omega_c + offset;
        p.validate();
        double coherent = 0.0;
        Column s = intensity_column(p, cfg.grid, coherent);
        auto comments = header_comments(cfg, p);
        comments.push_back("offset=" + format_number(offset) + " coherent_weight=" + format_number(coherent) +
                           " (elastic line at omega = 0, not included in S)");
        const std::vector<Column> cols{w, s};
        emit(out, cfg.out / fmt::format("spectrum_offset_{}.csv", offset), csv_document(comments, cols));
        s.name = fmt::format("offset {}", offset);
        series.push_back(std::move(s));
    }
    if (cfg.plot) emit(out, cfg.out / "sweep.svg", svg_document("intensity spectra", w.values, series));
    return 0;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
    const ValidationReport report = run_validation(cfg.params);
    for (const auto& c : report.checks) out << (c.passed ? "PASS " : "FAIL ") << c.name << '\n';
    emit(out, cfg.out, json_document(report.to_json()));
    return report.passed() ? 0 : 3;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Resonance fluorescence and quadrature squeezing spectra of a driven two-level atom "
                 "near a photonic bandedge. Frequencies are in units of beta."};
    app.name("pbgfluor");
    app.set_version_flag("--version", version_string);
    app.require_subcommand(1, 1);

    std::string config_path;
    app.add_option("--config", config_path, "flat key = value settings file");
    std::map<std::string, std::string> raw;
    bool plot_flag = false;
    for (const auto& key : setting_keys()) {
        if (std::string(key.name) == "plot") {
            app.add_flag("--plot", plot_flag, key.help);
            continue;
        }
        app.add_option(std::string("--") + key.name, raw[key.name], key.help);
    }

    const std::pair<Command, const char*> commands[] = {
        {Command::Kernel, "CSV of the memory kernel transform"},
        {Command::Steady, "JSON steady state and diagnostics"},
        {Command::Spectrum, "CSV intensity spectrum"},
        {Command::Quadrature, "CSV quadrature spectra plus squeezing intervals"},
        {Command::Sweep, "one intensity CSV per omega_a offset"},
        {Command::Validate, "cross-check against the independent oracles"},
    };
    std::map<Command, CLI::App*> subs;
    for (const auto& [cmd, help] : commands) subs[cmd] = app.add_subcommand(command_name(cmd), help)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << "pbgfluor: " << e.what() << '\n';
        return 1;
    }

    try {
        Settings settings;
        if (!config_path.empty()) settings = read_settings_file(config_path);
        for (const auto& key : setting_keys()) {
            const std::string flag = std::string("--") + key.name;
            if (app.count(flag) > 0 && flag != "--plot") settings[key.name] = raw[key.name];
        }
        if (plot_flag) settings["plot"] = "true";

        Command command = Command::Spectrum;
        for (const auto& [cmd, sub] : subs)
            if (sub->parsed()) command = cmd;
        const RunConfig cfg = build_config(command, settings);

        switch (cfg.command) {
            case Command::Kernel: return cmd_kernel(cfg, out);
            case Command::Steady: return cmd_steady(cfg, out);
            case Command::Spectrum: return cmd_spectrum(cfg, out);
            case Command::Quadrature: return cmd_quadrature(cfg, out);
            case Command::Sweep: return cmd_sweep(cfg, out);
            case Command::Validate: return cmd_validate(cfg, out);
        }
    } catch (const ConfigError& e) {
        err << "pbgfluor: config error: " << e.what() << '\n';
        return 1;
    } catch (const NumericalError& e) {
        err << "pbgfluor: numerical error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "pbgfluor: error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

}  // namespace pbg
