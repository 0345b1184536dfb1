#include "pbg/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "pbg/errors.hpp"

namespace pbg {

namespace {

constexpr double kImagResidue = 1e-10;

void check_real(const cplx& v, double scale) {
    if (std::abs(v.imag()) > kImagResidue * std::max(scale, 1e-300) && std::abs(v.imag()) > 1e-300)
        throw NumericalError("spectrum has a non-negligible imaginary residue: " + fmt::format("{}", v.imag()));
}

}  // namespace

double intensity_density(const Mat3& c) {
    const cplx v = c[Plus][Minus];
    check_real(v, mat3_max_abs(c));
    return v.real();
}

double quadrature_density(double theta, const Mat3& c_at_w, const Mat3& c_at_minus_w) {
    // S_theta has period pi; reducing first makes theta and theta + pi agree bit for bit
    const cplx phase = std::polar(1.0, -2.0 * std::remainder(theta, std::numbers::pi));
    const cplx anomalous = c_at_w[Minus][Minus] * phase;
    const cplx v = 0.25 * (anomalous + std::conj(anomalous) + c_at_w[Plus][Minus] + c_at_minus_w[Plus][Minus]);
    check_real(v, std::max(mat3_max_abs(c_at_w), mat3_max_abs(c_at_minus_w)));
    check_real(c_at_w[Plus][Minus], mat3_max_abs(c_at_w));
    check_real(c_at_minus_w[Plus][Minus], mat3_max_abs(c_at_minus_w));
    return v.real();
}

SpectrumTable compute_spectra(const ModelParams& p, const FrequencyGrid& grid, std::span<const double> thetas) {
    p.validate();
    grid.validate();
    const Reservoir res(p);
    SpectrumTable t;
    t.grid = grid;
    t.omega = grid.samples();
    t.steady = steady_state(p, res);
    t.coherent_weight = std::norm(t.steady.s_minus);
    for (double th : thetas) t.s_theta.push_back({th, {}});

    const std::size_t n = t.omega.size();
    t.s_intensity.resize(n);
    t.s_intensity_reflected.resize(n);
    for (auto& q : t.s_theta) q.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = t.omega[i];
        const Mat3 cp = fluctuation_spectra(w, p, res, t.steady);
        const Mat3 cm = fluctuation_spectra(-w, p, res, t.steady);
        t.s_intensity[i] = intensity_density(cp);
        t.s_intensity_reflected[i] = intensity_density(cm);
        for (auto& q : t.s_theta) q.values[i] = quadrature_density(q.theta, cp, cm);
    }
    return t;
}

IntensitySpectrum intensity_spectrum(const ModelParams& p, const FrequencyGrid& grid) {
    SpectrumTable t = compute_spectra(p, grid);
    return {std::move(t.s_intensity), t.coherent_weight};
}

std::vector<double> quadrature_spectrum(double theta, const ModelParams& p, const FrequencyGrid& grid) {
    const double th[] = {theta};
    SpectrumTable t = compute_spectra(p, grid, th);
    return std::move(t.s_theta.front().values);
}

std::vector<SqueezingInterval> detect_squeezing(std::span<const double> omega, std::span<const double> values,
                                                double tolerance) {
    if (omega.size() != values.size()) throw std::invalid_argument("detect_squeezing: size mismatch");
    std::vector<SqueezingInterval> out;
    std::size_t i = 0;
    while (i < values.size()) {
        if (!(values[i] < -tolerance)) {
            ++i;
            continue;
        }
        SqueezingInterval iv{omega[i], omega[i], values[i], omega[i]};
        while (i < values.size() && values[i] < -tolerance) {
            iv.omega_end = omega[i];
            if (values[i] < iv.min_value) {
                iv.min_value = values[i];
                iv.omega_at_min = omega[i];
            }
            ++i;
        }
        out.push_back(iv);
    }
    return out;
}

std::vector<Peak> peak_analysis(std::span<const double> omega, std::span<const double> values) {
    if (omega.size() != values.size()) throw std::invalid_argument("peak_analysis: size mismatch");
    std::vector<Peak> out;
    if (values.size() < 3) return out;
    for (std::size_t i = 1; i + 1 < values.size(); ++i) {
        const double l = values[i - 1], c = values[i], r = values[i + 1];
        // strict on the left so a flat top yields one peak
        if (!(c > l && c >= r)) continue;
        const double curvature = l - 2.0 * c + r;
        double shift = 0.0;
        if (curvature < 0.0) shift = 0.5 * (l - r) / curvature;
        shift = std::clamp(shift, -0.5, 0.5);
        const double h = 0.5 * (omega[i + 1] - omega[i - 1]);
        out.push_back({omega[i] + shift * h, c - 0.25 * (l - r) * shift});
    }
    return out;
}

}  // namespace pbg
