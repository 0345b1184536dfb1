// spectra.hpp: Fluorescence intensity and quadrature spectra
//
// The frequency axis is the offset w from the drive (= atomic) frequency.
// The elastic line of the mean dipole is reported as a separate weight
// |<sigma_->|^2 and is never added into the densities.

#pragma once

#include <span>
#include <vector>

#include "pbg/bloch.hpp"
#include "pbg/params.hpp"

namespace pbg {

struct QuadratureSeries {
    double theta{0.0};
    std::vector<double> values;
};

struct SpectrumTable {
    FrequencyGrid grid;
    std::vector<double> omega;
    std::vector<double> s_intensity;            // C_{+-}(w)
    std::vector<double> s_intensity_reflected;  // C_{+-}(-w)
    double coherent_weight{0.0};
    SteadyState steady;
    std::vector<QuadratureSeries> s_theta;
};

// Full per-frequency evaluation. Propagates SingularSteadyState/SingularResponse.
SpectrumTable compute_spectra(const ModelParams& p, const FrequencyGrid& grid, std::span<const double> thetas = {});

struct IntensitySpectrum {
    std::vector<double> values;
    double coherent_weight{0.0};
};

IntensitySpectrum intensity_spectrum(const ModelParams& p, const FrequencyGrid& grid);

// S_theta(w) = 1/4 [C--(w) e^{-2i theta} + C+-(w) + C+-(-w) + C++(w) e^{2i theta}],
// where C++(w) = conj(C--(w)) is the Hermitian partner of the anomalous term.
std::vector<double> quadrature_spectrum(double theta, const ModelParams& p, const FrequencyGrid& grid);

// Single-frequency kernels of the two functions above.
double intensity_density(const Mat3& c);
double quadrature_density(double theta, const Mat3& c_at_w, const Mat3& c_at_minus_w);

struct SqueezingInterval {
    double omega_start{0.0};
    double omega_end{0.0};
    double min_value{0.0};
    double omega_at_min{0.0};
};

// Maximal runs of consecutive samples with value < -tolerance.
std::vector<SqueezingInterval> detect_squeezing(std::span<const double> omega, std::span<const double> values,
                                                double tolerance = 1e-12);

struct Peak {
    double omega{0.0};
    double height{0.0};
};

// Local maxima by three-point comparison, refined by a parabola through the
// neighbours. Sorted by frequency.
std::vector<Peak> peak_analysis(std::span<const double> omega, std::span<const double> values);

}  // namespace pbg
