// bloch.hpp: Steady state and frequency-domain fluctuation spectra of the
// linearized generalized Bloch equations.
//
// Operators are ordered (sigma_-, sigma_+, sigma_z). Fluctuations obey
// M(w) x(w) = n(w) with the convention x(w) = int dt e^{+iwt} x(t), and the
// zero-temperature noise densities <n_j(w) n_k(w')> = 2 pi delta(w + w') N_jk(w).

#pragma once

#include <array>
#include <complex>
#include <cstddef>

#include "pbg/kernels.hpp"
#include "pbg/params.hpp"

namespace pbg {

enum Component : std::size_t { Minus = 0, Plus = 1, Z = 2 };

using Mat3 = std::array<std::array<cplx, 3>, 3>;

Mat3 mat3_zero();
Mat3 mat3_mul(const Mat3& a, const Mat3& b);
Mat3 mat3_transpose(const Mat3& a);
cplx mat3_det(const Mat3& a);
double mat3_max_abs(const Mat3& a);
// Cofactor inverse. Throws SingularResponse when |det| < rel_tol * scale^3.
Mat3 mat3_inverse(const Mat3& a, double rel_tol = 1e-14);

struct SteadyState {
    cplx s_minus{0.0, 0.0};
    cplx s_plus{0.0, 0.0};
    cplx s_z{-1.0, 0.0};
};

// Solves the DC equations
//   (i W/2) s_z - g(0) s_-           = 0
//   (-i W/2) s_z - gc(0) s_+         = 0
//   i W (s_- - s_+) - (g(0)+gc(0))(1 + s_z) = 0
// Throws SingularSteadyState when Re[g(0)+gc(0)] <= 1e-10 beta.
SteadyState steady_state(const ModelParams& p, const Reservoir& res);
SteadyState steady_state(const ModelParams& p);

// Largest residual of the three DC equations.
double steady_state_residual(const ModelParams& p, const Reservoir& res, const SteadyState& ss);

Mat3 response_matrix(double omega, const ModelParams& p, const Reservoir& res);

// Only N(-,+), N(-,z), N(z,+), N(z,z) are nonzero; all scale with 2 Re g(w).
Mat3 noise_density(double omega, const Reservoir& res, const SteadyState& ss);

// C_jk(w) = sum_ab [M(w)^-1]_ja N_ab(w) [M(-w)^-1]_kb, the density of
// <x_j(w) x_k(-w)>. Returns zero without inverting when N(w) vanishes.
Mat3 fluctuation_spectra(double omega, const ModelParams& p, const Reservoir& res, const SteadyState& ss);

}  // namespace pbg
