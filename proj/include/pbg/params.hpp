// params.hpp: Physical model parameters and frequency grids

#pragma once

#include <cstddef>
#include <vector>

namespace pbg {

enum class ReservoirMode { Bandgap, Markovian };

// Frequencies are angular and expressed in units of beta unless beta != 1 is
// given explicitly. Detuning is the drive offset omega_L - omega_a and must be 0.
struct ModelParams {
    double omega_a{0.0};
    double omega_c{0.0};
    double beta{1.0};
    double rabi{0.0};
    double detuning{0.0};
    ReservoirMode mode{ReservoirMode::Bandgap};
    double gamma{0.0};  // free-space decay rate, Markovian mode only

    static ModelParams bandgap(double omega_a, double omega_c, double rabi, double beta = 1.0);
    static ModelParams markovian(double gamma, double rabi);

    // Throws ConfigError naming the first offending field.
    void validate() const;

    bool is_bandgap() const noexcept { return mode == ReservoirMode::Bandgap; }
};

// Microscopic constants that fold into beta.
struct CouplingParams {
    double omega_a{0.0};
    double dipole{0.0};            // |d|
    double average_coupling{0.0};  // eta, solid-angle average of |d_hat . E|^2
    double curvature{0.0};         // A in omega_k = omega_c + A |k - k0|^2
    double epsilon0{0.0};
    double hbar{0.0};

    void validate() const;
};

// Uniform grid of offsets from the drive frequency.
struct FrequencyGrid {
    double omega_min{-1.0};
    double omega_max{1.0};
    std::size_t n_points{2};

    void validate() const;
    double step() const noexcept { return (omega_max - omega_min) / static_cast<double>(n_points - 1); }
    double at(std::size_t i) const noexcept;
    std::vector<double> samples() const;
};

}  // namespace pbg
