// config.hpp: Run configuration for the command-line front end

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pbg/params.hpp"

namespace pbg {

enum class Command { Kernel, Steady, Spectrum, Quadrature, Sweep, Validate };

const char* command_name(Command c) noexcept;

// Raw key/value settings. Later sources override earlier ones.
using Settings = std::map<std::string, std::string>;

struct SettingKey {
    const char* name;
    const char* help;
};

// Every key accepted in config files and as --key overrides.
const std::vector<SettingKey>& setting_keys();

// Flat "key = value" file; '#' starts a comment, blank lines are ignored.
// Throws ConfigError on unknown keys or malformed lines.
Settings parse_settings(const std::string& text, const std::string& origin = "config");
Settings read_settings_file(const std::filesystem::path& path);

struct RunConfig {
    Command command{Command::Spectrum};
    std::optional<std::string> preset;  // fig1 | fig2 | fig3
    ModelParams params;
    FrequencyGrid grid;
    std::vector<double> thetas;   // radians
    std::vector<double> offsets;  // omega_a - omega_c values for `sweep`
    std::filesystem::path out;
    bool plot{false};
    double squeeze_tol{1e-12};

    void validate() const;
};

// Applies preset defaults, then explicit settings, then validates.
RunConfig build_config(Command command, const Settings& settings);

}  // namespace pbg
