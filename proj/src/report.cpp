#include "pbg/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "pbg/errors.hpp"

namespace pbg {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return fmt::format("{:.17g}", v);
}

std::string describe_parameters(const ModelParams& p, const FrequencyGrid& grid) {
    std::string s = fmt::format("mode={}", p.is_bandgap() ? "bandgap" : "markovian");
    if (p.is_bandgap()) {
        s += " omega_a=" + format_number(p.omega_a);
        s += " omega_c=" + format_number(p.omega_c);
        s += " beta=" + format_number(p.beta);
    } else {
        s += " gamma=" + format_number(p.gamma);
    }
    s += " rabi=" + format_number(p.rabi);
    s += " detuning=" + format_number(p.detuning);
    s += " omega_min=" + format_number(grid.omega_min);
    s += " omega_max=" + format_number(grid.omega_max);
    s += fmt::format(" n_points={}", grid.n_points);
    return s;
}

std::string csv_document(std::span<const std::string> comments, std::span<const Column> columns) {
    std::string out;
    for (const auto& c : comments) out += "# " + c + "\n";
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (j) out += ',';
        out += columns[j].name;
    }
    out += '\n';
    const std::size_t rows = columns.empty() ? 0 : columns.front().values.size();
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (j) out += ',';
            out += format_number(columns[j].values.at(i));
        }
        out += '\n';
    }
    return out;
}

nlohmann::ordered_json complex_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

nlohmann::ordered_json params_json(const ModelParams& p) {
    nlohmann::ordered_json j;
    j["mode"] = p.is_bandgap() ? "bandgap" : "markovian";
    if (p.is_bandgap()) {
        j["omega_a"] = p.omega_a;
        j["omega_c"] = p.omega_c;
        j["beta"] = p.beta;
    } else {
        j["gamma"] = p.gamma;
    }
    j["rabi"] = p.rabi;
    j["detuning"] = p.detuning;
    return j;
}

nlohmann::ordered_json grid_json(const FrequencyGrid& g) {
    return {{"omega_min", g.omega_min}, {"omega_max", g.omega_max}, {"n_points", g.n_points}};
}

std::string json_document(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

std::string svg_document(const std::string& title, std::span<const double> x, std::span<const Column> series) {
    constexpr double width = 800.0, height = 500.0, margin = 60.0;
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

    double xmin = x.empty() ? 0.0 : *std::min_element(x.begin(), x.end());
    double xmax = x.empty() ? 1.0 : *std::max_element(x.begin(), x.end());
    double ymin = 0.0, ymax = 0.0;
    for (const auto& s : series)
        for (double v : s.values)
            if (std::isfinite(v)) {
                ymin = std::min(ymin, v);
                ymax = std::max(ymax, v);
            }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;
    auto px = [&](double v) { return margin + (v - xmin) / (xmax - xmin) * (width - 2 * margin); };
    auto py = [&](double v) { return height - margin - (v - ymin) / (ymax - ymin) * (height - 2 * margin); };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        width, height, width, height);
    out += fmt::format("<title>{}</title>\n", title);
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", margin,
                       margin, width - 2 * margin, height - 2 * margin);
    if (ymin < 0.0 && ymax > 0.0)
        out += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"gray\" "
                           "stroke-dasharray=\"4 4\"/>\n",
                           px(xmin), py(0.0), px(xmax), py(0.0));
    out += fmt::format("<text x=\"{}\" y=\"30\" font-family=\"sans-serif\" font-size=\"16\">{}</text>\n", margin,
                       title);
    out += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">omega [{}, {}] (units of "
                       "beta)</text>\n",
                       margin, height - 20.0, format_number(xmin), format_number(xmax));
    for (std::size_t k = 0; k < series.size(); ++k) {
        const char* color = colors[k % std::size(colors)];
        out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.2\" points=\"", color);
        for (std::size_t i = 0; i < x.size() && i < series[k].values.size(); ++i) {
            const double v = series[k].values[i];
            if (!std::isfinite(v)) continue;
            out += fmt::format("{:.2f},{:.2f} ", px(x[i]), py(v));
        }
        out += "\"/>\n";
        out += fmt::format("<text x=\"{}\" y=\"{}\" fill=\"{}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
                           width - margin - 150.0, margin + 18.0 * static_cast<double>(k + 1), color, series[k].name);
    }
    out += "</svg>\n";
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("out", "cannot write '" + path.string() + "'");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw ConfigError("out", "write failed for '" + path.string() + "'");
}

}  // namespace pbg
