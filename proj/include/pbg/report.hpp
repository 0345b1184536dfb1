// report.hpp: Deterministic CSV, JSON and SVG output

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "pbg/kernels.hpp"
#include "pbg/params.hpp"

namespace pbg {

inline constexpr const char* version_string = PBG_VERSION;
inline constexpr const char* units_note = "frequencies in units of beta, omega = offset from the drive frequency";

struct Column {
    std::string name;
    std::vector<double> values;
};

// 17 significant digits, '.' decimal point, independent of the locale.
std::string format_number(double v);

// "mode=bandgap omega_a=... omega_c=... ..." with every model and grid parameter.
std::string describe_parameters(const ModelParams& p, const FrequencyGrid& grid);

// Comment lines (each prefixed "# "), a header row, then one row per sample.
std::string csv_document(std::span<const std::string> comments, std::span<const Column> columns);

nlohmann::ordered_json complex_json(cplx z);
nlohmann::ordered_json params_json(const ModelParams& p);
nlohmann::ordered_json grid_json(const FrequencyGrid& g);
std::string json_document(const nlohmann::ordered_json& j);

// SVG 1.1 line plot, one polyline per series.
std::string svg_document(const std::string& title, std::span<const double> x, std::span<const Column> series);

// Writes bytes verbatim ('\n' line endings). Throws ConfigError("out", ...) on failure.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace pbg
