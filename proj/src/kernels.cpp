#include "pbg/kernels.hpp"

#include <cmath>
#include <numbers>

namespace pbg {

namespace {

// sqrt with the branch sqrt(x<0) = sign * i * sqrt|x|
cplx branch_sqrt(double x, double sign) {
    if (x >= 0.0) return {std::sqrt(x), 0.0};
    return {0.0, sign * std::sqrt(-x)};
}

}  // namespace

double dos_anisotropic(double omega, double omega_c, double curvature) {
    if (omega <= omega_c) return 0.0;
    return std::sqrt(omega - omega_c) / std::pow(curvature, 1.5);
}

double compute_beta(const CouplingParams& cp) {
    const double num = cp.omega_a * cp.omega_a * cp.dipole * cp.dipole * cp.average_coupling;
    const double den = 6.0 * cp.hbar * cp.epsilon0 * std::numbers::pi * std::pow(cp.curvature, 1.5);
    return std::cbrt(std::pow(num / den, 2.0));
}

cplx kernel_g(double omega, const ModelParams& p) {
    const double scale = std::pow(p.beta, 1.5);
    const cplx den = std::sqrt(p.omega_c) + branch_sqrt(p.omega_c - p.omega_a - omega, -1.0);
    return scale * cplx{0.0, -1.0} / den;
}

cplx kernel_gc(double omega, const ModelParams& p) {
    const double scale = std::pow(p.beta, 1.5);
    const cplx den = std::sqrt(p.omega_c) + branch_sqrt(p.omega_c - p.omega_a + omega, +1.0);
    return scale * cplx{0.0, 1.0} / den;
}

cplx kernel_markovian(double /*omega*/, double gamma) { return {0.5 * gamma, 0.0}; }

cplx Reservoir::g(double omega) const {
    if (params.is_bandgap()) return kernel_g(omega, params);
    return kernel_markovian(omega, params.gamma);
}

cplx Reservoir::gc(double omega) const {
    if (params.is_bandgap()) return kernel_gc(omega, params);
    return kernel_markovian(omega, params.gamma);
}

bool Reservoir::in_gap(double omega) const {
    return params.is_bandgap() && omega + params.omega_a < params.omega_c;
}

KernelPair evaluate_kernels(const ModelParams& p, std::span<const double> omegas) {
    const Reservoir res(p);
    KernelPair out;
    out.omega.assign(omegas.begin(), omegas.end());
    out.g.reserve(omegas.size());
    out.gc.reserve(omegas.size());
    for (double w : omegas) {
        out.g.push_back(res.g(w));
        out.gc.push_back(res.gc(w));
    }
    return out;
}

}  // namespace pbg
