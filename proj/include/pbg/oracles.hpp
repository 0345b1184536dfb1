// oracles.hpp: Independent numerical references for the closed-form kernels
// and the frequency-domain steady state.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "pbg/bloch.hpp"
#include "pbg/kernels.hpp"
#include "pbg/params.hpp"

namespace pbg::oracle {

struct IntegrationControl {
    double cutoff_offset{1e4};  // Lambda = omega_a + cutoff_offset (units of beta)
    double rel_tol{1e-11};
    double abs_tol{1e-14};
    unsigned max_depth{20};
};

// g(w) = int_{wc}^{inf} dw' rho(w') i / (w + wa - w' + i0+), with the reservoir
// density rho(w') = beta^{3/2} sqrt(w' - wc) / (pi w'). Evaluated as half-residue
// pi rho(w + wa) plus a principal value by singularity subtraction and adaptive
// Gauss-Kronrod up to Lambda, then the exact tail beyond Lambda.
// Throws NonConvergence when the error estimate misses the tolerance.
cplx kernel_numeric_oracle(double omega, const ModelParams& p, const IntegrationControl& ctrl = {});

// Same integral for gc via gc(w) = conj(g(-w)).
cplx kernel_c_numeric_oracle(double omega, const ModelParams& p, const IntegrationControl& ctrl = {});

// Time-domain kernel G(t) = e^{i(wa-wc)t} int_0^inf w(s) e^{-st} ds written as a
// sum of exponentials plus an instantaneous remainder (the s > s_max part).
struct ExponentialKernel {
    std::vector<cplx> weight;
    std::vector<cplx> rate;  // G(t) ~ sum weight_j exp(-rate_j t)
    cplx instantaneous{0.0, 0.0};

    // int_0^inf G(t) e^{i w t} dt for this representation.
    cplx transform(double omega) const;
    cplx evaluate(double t) const;
};

struct ExponentialFitControl {
    double s_min{1e-12};
    double s_max{1e16};
    unsigned nodes_per_decade{5};
};

ExponentialKernel bandedge_time_kernel(const ModelParams& p, const ExponentialFitControl& ctrl = {});
ExponentialKernel conjugate(const ExponentialKernel& k);

struct MeanSample {
    double t{0.0};
    cplx s_minus{0.0, 0.0};
    cplx s_plus{0.0, 0.0};
    cplx s_z{-1.0, 0.0};
};

struct TimeDomainResult {
    std::vector<MeanSample> samples;
    // Average over the last half of the run.
    SteadyState long_time;
};

// Integrates the mean equations with their memory convolutions from the ground
// state. Heun predictor-corrector in the atomic variables, exact exponential
// updates for the memory modes. `sample_every` thins the stored trajectory.
// Throws StepSizeTooLarge unless dt resolves the memory time 1/(4 wc) with at
// least ten steps (Markovian: dt max(Gamma, Omega) <= 0.1).
TimeDomainResult timedomain_means(const ModelParams& p, double t_max, double dt, std::size_t sample_every = 1);

struct MarkovianReference {
    double s_z{-1.0};
    std::vector<double> expected_peaks;  // {-Omega, 0, Omega}
    bool squeezing_threshold{true};      // Omega^2 <= Gamma^2 / 4
};

MarkovianReference markovian_reference(const ModelParams& p);

// (4 wc) / max(Omega, 2 Re g(0)): memory bandwidth over atomic rates.
double memory_timescale_ratio(const ModelParams& p);

}  // namespace pbg::oracle
