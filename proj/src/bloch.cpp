#include "pbg/bloch.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "pbg/errors.hpp"

namespace pbg {

namespace {

constexpr cplx I{0.0, 1.0};
constexpr double kSingularDissipation = 1e-10;

}  // namespace

Mat3 mat3_zero() {
    Mat3 m;
    for (auto& row : m) row.fill(cplx{0.0, 0.0});
    return m;
}

Mat3 mat3_mul(const Mat3& a, const Mat3& b) {
    Mat3 c = mat3_zero();
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 3; ++k) {
            if (a[i][k] == cplx{}) continue;
            for (std::size_t j = 0; j < 3; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

Mat3 mat3_transpose(const Mat3& a) {
    Mat3 t;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) t[i][j] = a[j][i];
    return t;
}

cplx mat3_det(const Mat3& a) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

double mat3_max_abs(const Mat3& a) {
    double m = 0.0;
    for (const auto& row : a)
        for (const auto& v : row) m = std::max(m, std::abs(v));
    return m;
}

Mat3 mat3_inverse(const Mat3& a, double rel_tol) {
    const cplx det = mat3_det(a);
    const double scale = mat3_max_abs(a);
    if (!(std::abs(det) > rel_tol * scale * scale * scale))
        throw SingularResponse("response matrix is singular (|det| = " + fmt::format("{}", std::abs(det)) + ")");
    Mat3 inv;
    inv[0][0] = a[1][1] * a[2][2] - a[1][2] * a[2][1];
    inv[0][1] = a[0][2] * a[2][1] - a[0][1] * a[2][2];
    inv[0][2] = a[0][1] * a[1][2] - a[0][2] * a[1][1];
    inv[1][0] = a[1][2] * a[2][0] - a[1][0] * a[2][2];
    inv[1][1] = a[0][0] * a[2][2] - a[0][2] * a[2][0];
    inv[1][2] = a[0][2] * a[1][0] - a[0][0] * a[1][2];
    inv[2][0] = a[1][0] * a[2][1] - a[1][1] * a[2][0];
    inv[2][1] = a[0][1] * a[2][0] - a[0][0] * a[2][1];
    inv[2][2] = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    for (auto& row : inv)
        for (auto& v : row) v /= det;
    return inv;
}

SteadyState steady_state(const ModelParams& p, const Reservoir& res) {
    const cplx g0 = res.g(0.0);
    const cplx gc0 = res.gc(0.0);
    const cplx damping = g0 + gc0;
    if (!(damping.real() > kSingularDissipation * p.beta))
        throw SingularSteadyState("no DC dissipation: Re[g(0) + gc(0)] = " + fmt::format("{}", damping.real()) +
                                  " (transition at or inside the bandgap edge)");
    const double half = 0.5 * p.rabi;
    // Eliminate s_-, s_+ in favour of s_z, then solve the population row.
    //   s_- = (i W/2) s_z / g0,  s_+ = (-i W/2) s_z / gc0
    //   i W (s_- - s_+) = -(W^2/2) (1/g0 + 1/gc0) s_z
    const cplx a = I * half / g0;
    const cplx b = -I * half / gc0;
    const cplx coeff = I * p.rabi * (a - b) - damping;
    SteadyState ss;
    ss.s_z = damping / coeff;
    ss.s_minus = a * ss.s_z;
    ss.s_plus = b * ss.s_z;
    return ss;
}

SteadyState steady_state(const ModelParams& p) { return steady_state(p, Reservoir(p)); }

double steady_state_residual(const ModelParams& p, const Reservoir& res, const SteadyState& ss) {
    const cplx g0 = res.g(0.0);
    const cplx gc0 = res.gc(0.0);
    const double half = 0.5 * p.rabi;
    const cplx r0 = I * half * ss.s_z - g0 * ss.s_minus;
    const cplx r1 = -I * half * ss.s_z - gc0 * ss.s_plus;
    const cplx r2 = I * p.rabi * (ss.s_minus - ss.s_plus) - (g0 + gc0) * (1.0 + ss.s_z);
    return std::max({std::abs(r0), std::abs(r1), std::abs(r2)});
}

Mat3 response_matrix(double omega, const ModelParams& p, const Reservoir& res) {
    const cplx g = res.g(omega);
    const cplx gc = res.gc(omega);
    const cplx d = -I * omega;
    const double half = 0.5 * p.rabi;
    Mat3 m = mat3_zero();
    m[Minus][Minus] = d + g;
    m[Minus][Z] = -I * half;
    m[Plus][Plus] = d + gc;
    m[Plus][Z] = I * half;
    m[Z][Minus] = -I * p.rabi;
    m[Z][Plus] = I * p.rabi;
    m[Z][Z] = d + g + gc;
    return m;
}

Mat3 noise_density(double omega, const Reservoir& res, const SteadyState& ss) {
    const double k = res.noise_kernel(omega);
    Mat3 n = mat3_zero();
    n[Minus][Plus] = k;
    n[Minus][Z] = 2.0 * ss.s_minus * k;
    n[Z][Plus] = 2.0 * ss.s_plus * k;
    n[Z][Z] = 2.0 * (1.0 + ss.s_z) * k;
    return n;
}

Mat3 fluctuation_spectra(double omega, const ModelParams& p, const Reservoir& res, const SteadyState& ss) {
    const Mat3 n = noise_density(omega, res, ss);
    if (mat3_max_abs(n) == 0.0) return mat3_zero();
    const Mat3 left = mat3_inverse(response_matrix(omega, p, res));
    const Mat3 right = mat3_inverse(response_matrix(-omega, p, res));
    return mat3_mul(mat3_mul(left, n), mat3_transpose(right));
}

}  // namespace pbg
