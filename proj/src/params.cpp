#include "pbg/params.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "pbg/errors.hpp"

namespace pbg {

namespace {

void require_finite(const char* field, double v) {
    if (!std::isfinite(v)) throw ConfigError(field, "must be finite");
}

std::string got(double v) { return " (got " + fmt::format("{}", v) + ")"; }

}  // namespace

ModelParams ModelParams::bandgap(double omega_a, double omega_c, double rabi, double beta) {
    ModelParams p;
    p.omega_a = omega_a;
    p.omega_c = omega_c;
    p.rabi = rabi;
    p.beta = beta;
    p.mode = ReservoirMode::Bandgap;
    p.validate();
    return p;
}

ModelParams ModelParams::markovian(double gamma, double rabi) {
    ModelParams p;
    p.gamma = gamma;
    p.rabi = rabi;
    p.mode = ReservoirMode::Markovian;
    p.validate();
    return p;
}

void ModelParams::validate() const {
    require_finite("beta", beta);
    require_finite("rabi", rabi);
    require_finite("detuning", detuning);
    if (!(beta > 0.0)) throw ConfigError("beta", "must be > 0" + got(beta));
    if (!(rabi >= 0.0)) throw ConfigError("rabi", "must be >= 0" + got(rabi));
    if (detuning != 0.0) throw ConfigError("detuning", "only resonant driving (detuning = 0) is supported" + got(detuning));
    if (mode == ReservoirMode::Markovian) {
        require_finite("gamma", gamma);
        if (!(gamma > 0.0)) throw ConfigError("gamma", "must be > 0 in markovian mode" + got(gamma));
        return;
    }
    require_finite("omega_a", omega_a);
    require_finite("omega_c", omega_c);
    if (!(omega_c > 0.0)) throw ConfigError("omega_c", "must be > 0" + got(omega_c));
    if (!(omega_a >= omega_c))
        throw ConfigError("omega_a", "must be >= omega_c (transition at or above the bandedge)" + got(omega_a));
}

void CouplingParams::validate() const {
    const std::pair<const char*, double> fields[] = {
        {"omega_a", omega_a}, {"dipole", dipole},       {"average_coupling", average_coupling},
        {"curvature", curvature}, {"epsilon0", epsilon0}, {"hbar", hbar},
    };
    for (const auto& [name, v] : fields) {
        require_finite(name, v);
        if (!(v > 0.0)) throw ConfigError(name, "must be > 0" + got(v));
    }
}

void FrequencyGrid::validate() const {
    require_finite("omega_min", omega_min);
    require_finite("omega_max", omega_max);
    if (!(omega_min < omega_max)) throw ConfigError("omega_max", "must exceed omega_min" + got(omega_max));
    if (n_points < 2) throw ConfigError("n_points", "must be >= 2");
}

double FrequencyGrid::at(std::size_t i) const noexcept {
    if (i + 1 == n_points) return omega_max;
    return omega_min + step() * static_cast<double>(i);
}

std::vector<double> FrequencyGrid::samples() const {
    std::vector<double> out(n_points);
    for (std::size_t i = 0; i < n_points; ++i) out[i] = at(i);
    return out;
}

}  // namespace pbg
