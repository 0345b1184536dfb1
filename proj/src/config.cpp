#include "pbg/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

#include "pbg/errors.hpp"

namespace pbg {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& raw) {
    const std::string s = trim(raw);
    double v = 0.0;
    const char* first = s.data();
    if (!s.empty() && s.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        throw ConfigError(key, "expected a number (got '" + s + "')");
    if (!std::isfinite(v)) throw ConfigError(key, "must be finite");
    return v;
}

std::size_t parse_count(const std::string& key, const std::string& raw) {
    const std::string s = trim(raw);
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        throw ConfigError(key, "expected a non-negative integer (got '" + s + "')");
    return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& raw) {
    std::vector<double> out;
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(key, item));
    if (out.empty()) throw ConfigError(key, "expected a comma-separated list of numbers");
    return out;
}

bool parse_bool(const std::string& key, const std::string& raw) {
    const std::string s = trim(raw);
    if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
    if (s == "0" || s == "false" || s == "no" || s == "off") return false;
    throw ConfigError(key, "expected true or false (got '" + s + "')");
}

bool known_key(const std::string& key) {
    for (const auto& k : setting_keys())
        if (key == k.name) return true;
    return false;
}

const std::string* find(const Settings& s, const char* key) {
    const auto it = s.find(key);
    return it == s.end() ? nullptr : &it->second;
}

}  // namespace

const char* command_name(Command c) noexcept {
    switch (c) {
        case Command::Kernel: return "kernel";
        case Command::Steady: return "steady";
        case Command::Spectrum: return "spectrum";
        case Command::Quadrature: return "quadrature";
        case Command::Sweep: return "sweep";
        case Command::Validate: return "validate";
    }
    return "?";
}

const std::vector<SettingKey>& setting_keys() {
    static const std::vector<SettingKey> keys = {
        {"preset", "figure preset: fig1, fig2 or fig3"},
        {"mode", "reservoir: bandgap or markovian"},
        {"omega_a", "atomic transition frequency (units of beta)"},
        {"omega_c", "bandedge frequency (units of beta)"},
        {"offset", "omega_a - omega_c, alternative to omega_a"},
        {"offsets", "comma-separated omega_a - omega_c list for sweep"},
        {"beta", "coupling scale beta (frequency unit)"},
        {"rabi", "Rabi frequency Omega"},
        {"detuning", "drive detuning (must be 0)"},
        {"gamma", "free-space decay rate, markovian mode"},
        {"omega_min", "lowest frequency offset of the grid"},
        {"omega_max", "highest frequency offset of the grid"},
        {"n_points", "number of grid points"},
        {"thetas", "comma-separated quadrature angles in radians"},
        {"squeeze_tol", "values below -squeeze_tol count as squeezing"},
        {"out", "output file (directory for sweep)"},
        {"plot", "also write an SVG plot (true/false)"},
    };
    return keys;
}

Settings parse_settings(const std::string& text, const std::string& origin) {
    Settings out;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = origin + ":" + fmt::format("{}", lineno);
        if (eq == std::string::npos) throw ConfigError(where, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        if (!known_key(key)) throw ConfigError(key, "unknown key at " + where);
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

Settings read_settings_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config", "cannot read '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_settings(buf.str(), path.string());
}

void RunConfig::validate() const {
    params.validate();
    grid.validate();
    if (preset && *preset != "fig1" && *preset != "fig2" && *preset != "fig3")
        throw ConfigError("preset", "must be fig1, fig2 or fig3 (got '" + *preset + "')");
    if (!(squeeze_tol >= 0.0)) throw ConfigError("squeeze_tol", "must be >= 0");
    if (command == Command::Quadrature && thetas.empty()) throw ConfigError("thetas", "at least one angle is required");
    if (command == Command::Sweep) {
        if (!params.is_bandgap()) throw ConfigError("mode", "sweep requires bandgap mode");
        if (offsets.empty()) throw ConfigError("offsets", "sweep needs a list of omega_a - omega_c values");
        for (double o : offsets)
            if (!(o >= 0.0)) throw ConfigError("offsets", "every offset must be >= 0 (got " + fmt::format("{}", o) + ")");
    }
    if (out.empty()) throw ConfigError("out", "must not be empty");
}

RunConfig build_config(Command command, const Settings& s) {
    for (const auto& [key, value] : s)
        if (!known_key(key)) throw ConfigError(key, "unknown key");

    RunConfig cfg;
    cfg.command = command;
    cfg.params.mode = ReservoirMode::Bandgap;
    cfg.params.omega_c = 100.0;
    cfg.params.rabi = 0.25;
    cfg.params.gamma = 1.0;
    cfg.thetas = {0.0, std::numbers::pi / 2.0};
    cfg.grid = {-1.0, 1.0, 4001};

    std::optional<double> offset;
    if (const auto* v = find(s, "preset")) {
        cfg.preset = trim(*v);
        if (*cfg.preset == "fig1") {
            offset = 0.0;
            cfg.grid = {-300.0, 500.0, 8001};
        } else if (*cfg.preset != "fig2" && *cfg.preset != "fig3") {
            throw ConfigError("preset", "must be fig1, fig2 or fig3 (got '" + *cfg.preset + "')");
        }
    }

    if (const auto* v = find(s, "mode")) {
        const std::string m = trim(*v);
        if (m == "bandgap") {
            cfg.params.mode = ReservoirMode::Bandgap;
        } else if (m == "markovian") {
            if (cfg.preset) throw ConfigError("mode", "presets describe the bandgap reservoir");
            cfg.params.mode = ReservoirMode::Markovian;
            cfg.grid = {-20.0, 20.0, 4001};
        } else {
            throw ConfigError("mode", "must be bandgap or markovian (got '" + m + "')");
        }
    }

    if (const auto* v = find(s, "omega_c")) cfg.params.omega_c = parse_double("omega_c", *v);
    if (const auto* v = find(s, "beta")) cfg.params.beta = parse_double("beta", *v);
    if (const auto* v = find(s, "rabi")) cfg.params.rabi = parse_double("rabi", *v);
    if (const auto* v = find(s, "detuning")) cfg.params.detuning = parse_double("detuning", *v);
    if (const auto* v = find(s, "gamma")) cfg.params.gamma = parse_double("gamma", *v);
    if (const auto* v = find(s, "omega_min")) cfg.grid.omega_min = parse_double("omega_min", *v);
    if (const auto* v = find(s, "omega_max")) cfg.grid.omega_max = parse_double("omega_max", *v);
    if (const auto* v = find(s, "n_points")) cfg.grid.n_points = parse_count("n_points", *v);
    if (const auto* v = find(s, "thetas")) cfg.thetas = parse_list("thetas", *v);
    if (const auto* v = find(s, "offsets")) cfg.offsets = parse_list("offsets", *v);
    if (const auto* v = find(s, "squeeze_tol")) cfg.squeeze_tol = parse_double("squeeze_tol", *v);
    if (const auto* v = find(s, "plot")) cfg.plot = parse_bool("plot", *v);

    if (command == Command::Sweep && cfg.offsets.empty())
        throw ConfigError("offsets", "sweep needs a list of omega_a - omega_c values");

    const auto* omega_a = find(s, "omega_a");
    if (const auto* v = find(s, "offset")) {
        if (omega_a) throw ConfigError("offset", "give either omega_a or offset, not both");
        offset = parse_double("offset", *v);
        if (!(*offset >= 0.0)) throw ConfigError("offset", "must be >= 0 (got " + fmt::format("{}", *offset) + ")");
    }
    if (cfg.params.is_bandgap()) {
        if (omega_a) {
            cfg.params.omega_a = parse_double("omega_a", *omega_a);
        } else if (offset) {
            cfg.params.omega_a = cfg.params.omega_c + *offset;
        } else if (command == Command::Sweep && !cfg.offsets.empty()) {
            cfg.params.omega_a = cfg.params.omega_c + cfg.offsets.front();
        } else if (command == Command::Validate) {
            cfg.params.omega_a = cfg.params.omega_c + 2.0;
        } else {
            throw ConfigError(cfg.preset ? "offset" : "omega_a",
                              cfg.preset ? "required for preset " + *cfg.preset + " (omega_a - omega_c, units of beta)"
                                         : "required in bandgap mode (or give offset)");
        }
    }

    if (const auto* v = find(s, "out")) {
        cfg.out = trim(*v);
    } else {
        switch (command) {
            case Command::Steady: cfg.out = "steady.json"; break;
            case Command::Validate: cfg.out = "validate.json"; break;
            case Command::Sweep: cfg.out = "sweep"; break;
            default: cfg.out = std::string(command_name(command)) + ".csv"; break;
        }
    }

    cfg.validate();
    return cfg;
}

}  // namespace pbg
