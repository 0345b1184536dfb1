// kernels.hpp: Bandedge density of states and frequency-domain memory kernels
//
// The reservoir enters the linearized Bloch equations through two causal
// memory functions G(t) and Gc(t) = conj(G(t)). Their half-line transforms
// (x(w) = int dt e^{+iwt} x(t)) for the anisotropic bandedge model are
//
//   g(w)  = beta^{3/2} (-i) / (sqrt(wc) + sqrt(wc - wa - w))
//   gc(w) = beta^{3/2} (+i) / (sqrt(wc) + sqrt(wc - wa + w))
//
// For negative radicands g uses sqrt(x) = -i sqrt|x| (continuation from below)
// and gc the conjugate choice, so that Re g >= 0 and gc(w) = conj(g(-w)).

#pragma once

#include <complex>
#include <span>
#include <vector>

#include "pbg/params.hpp"

namespace pbg {

using cplx = std::complex<double>;

// D(w) = A^{-3/2} sqrt(w - wc) Theta(w - wc).
double dos_anisotropic(double omega, double omega_c, double curvature);

// beta = (wa^2 d^2 eta / (6 hbar eps0 pi A^{3/2}))^{2/3}.
double compute_beta(const CouplingParams& cp);

cplx kernel_g(double omega, const ModelParams& p);
cplx kernel_gc(double omega, const ModelParams& p);

// Flat reservoir: Gamma/2 for both kernels at every frequency.
cplx kernel_markovian(double omega, double gamma);

// Dispatches on the reservoir mode.
struct Reservoir {
    explicit Reservoir(const ModelParams& p) : params(p) {}

    cplx g(double omega) const;
    cplx gc(double omega) const;
    // Two-sided noise kernel transform, 2 Re g(w).
    double noise_kernel(double omega) const { return 2.0 * g(omega).real(); }
    // True for w + wa strictly below the bandedge.
    bool in_gap(double omega) const;

    ModelParams params;
};

enum class BranchRule { ContinuationFromBelow };

struct KernelPair {
    std::vector<double> omega;
    std::vector<cplx> g;
    std::vector<cplx> gc;
    BranchRule branch{BranchRule::ContinuationFromBelow};
};

KernelPair evaluate_kernels(const ModelParams& p, std::span<const double> omegas);

}  // namespace pbg
