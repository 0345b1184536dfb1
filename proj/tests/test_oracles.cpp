#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "pbg/bloch.hpp"
#include "pbg/errors.hpp"
#include "pbg/kernels.hpp"
#include "pbg/oracles.hpp"
#include "support.hpp"

using namespace pbg;
using doctest::Approx;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

double fixed_point_error(const SteadyState& a, const SteadyState& b) {
    return std::max({std::abs(a.s_minus - b.s_minus), std::abs(a.s_plus - b.s_plus), std::abs(a.s_z - b.s_z)});
}

SteadyState as_state(const oracle::MeanSample& s) { return {s.s_minus, s.s_plus, s.s_z}; }

}  // namespace

TEST_CASE("DOS-integral oracle reproduces the closed-form kernel") {
    const ModelParams edge = ModelParams::bandgap(100.0, 100.0, 0.0);
    CHECK(std::abs(oracle::kernel_numeric_oracle(0.0, edge) - cplx(0.0, -0.1)) <= 1e-6);

    const cplx deep = oracle::kernel_numeric_oracle(-75.0, edge);
    CHECK(std::abs(deep.real()) <= 1e-6 * std::abs(deep));
    CHECK(rel(deep, kernel_g(-75.0, edge)) <= 1e-6);

    CHECK(rel(oracle::kernel_numeric_oracle(300.0, edge), kernel_g(300.0, edge)) <= 1e-6);
    CHECK(rel(oracle::kernel_c_numeric_oracle(-300.0, edge), kernel_gc(-300.0, edge)) <= 1e-6);
}

TEST_CASE("oracle agreement on random configurations") {
    std::mt19937_64 rng(test::seed() + 30);
    for (int draw = 0; draw < 10; ++draw) {
        const ModelParams p = test::random_bandgap(rng);
        const double branch = p.omega_c - p.omega_a;
        std::uniform_real_distribution<double> wdist(branch - 2.0 * p.omega_c, branch + 4.0 * p.omega_c);
        for (int k = 0; k < 20; ++k) {
            const double w = wdist(rng);
            const double tol = std::abs(w - branch) <= 0.05 * p.beta ? 1e-3 : 1e-6;
            CHECK(rel(oracle::kernel_numeric_oracle(w, p), kernel_g(w, p)) <= tol);
        }
        CHECK(rel(oracle::kernel_numeric_oracle(branch, p), kernel_g(branch, p)) <= 1e-3);
    }
}

TEST_CASE("oracle reports an exhausted refinement budget") {
    oracle::IntegrationControl ctrl;
    ctrl.max_depth = 0;
    ctrl.rel_tol = 1e-16;
    ctrl.abs_tol = 0.0;
    CHECK_THROWS_AS(oracle::kernel_numeric_oracle(3.0, ModelParams::bandgap(100.5, 100.0, 0.0), ctrl), NonConvergence);
}

TEST_CASE("sum-of-exponentials time kernel reproduces the transforms") {
    for (const auto& p : {ModelParams::bandgap(100.0, 100.0, 0.0), ModelParams::bandgap(102.0, 100.0, 0.0),
                          ModelParams::bandgap(3.5, 2.0, 0.0, 1.7)}) {
        const auto k = oracle::bandedge_time_kernel(p);
        const auto kc = oracle::conjugate(k);
        for (double w : {-3.0 * p.omega_c, -0.3, 0.0, 0.2, 1.0, 2.0 * p.omega_c}) {
            CAPTURE(w);
            CHECK(rel(k.transform(w), kernel_g(w, p)) <= 1e-7);
            CHECK(rel(kc.transform(w), kernel_gc(w, p)) <= 1e-7);
            // two-sided transform of G(|t|) is the noise kernel 2 Re g
            const Reservoir res(p);
            CHECK(std::abs(2.0 * k.transform(w).real() - res.noise_kernel(w)) <= 1e-7 * std::abs(kernel_g(w, p)));
        }
        // G(t) decays and Gc(t) = conj(G(t))
        CHECK(std::abs(k.evaluate(50.0)) < std::abs(k.evaluate(0.5)));
        CHECK(std::abs(kc.evaluate(1.3) - std::conj(k.evaluate(1.3))) <= 1e-15 * std::abs(k.evaluate(1.3)));
    }
}

TEST_CASE("undriven atom stays in the ground state") {
    for (const auto& p : {ModelParams::markovian(1.0, 0.0), ModelParams::bandgap(2.5, 2.0, 0.0)}) {
        const auto run = oracle::timedomain_means(p, 20.0, 1.0 / 160.0);
        for (const auto& s : run.samples) {
            CHECK(s.s_minus == cplx{});
            CHECK(s.s_plus == cplx{});
            CHECK(s.s_z == cplx(-1.0, 0.0));
        }
    }
}

TEST_CASE("Markovian means converge to (-i/3, i/3, -1/3) by t = 20") {
    const auto p = ModelParams::markovian(1.0, 1.0);
    const auto run = oracle::timedomain_means(p, 20.0, 0.005, 100);
    CHECK(run.samples.back().t == Approx(20.0));
    const SteadyState want{{0.0, -1.0 / 3.0}, {0.0, 1.0 / 3.0}, {-1.0 / 3.0, 0.0}};
    CHECK(fixed_point_error(as_state(run.samples.back()), want) <= 1e-6);
}

TEST_CASE("time step must resolve the memory time") {
    CHECK_THROWS_AS(oracle::timedomain_means(ModelParams::bandgap(100.5, 100.0, 0.25), 10.0, 1e-3), StepSizeTooLarge);
    CHECK_NOTHROW(oracle::timedomain_means(ModelParams::bandgap(100.5, 100.0, 0.25), 0.1, 2.5e-4));
    CHECK_THROWS_AS(oracle::timedomain_means(ModelParams::markovian(1.0, 10.0), 10.0, 0.02), StepSizeTooLarge);
    CHECK_THROWS_AS(oracle::timedomain_means(ModelParams::markovian(1.0, 1.0), 10.0, -1.0), StepSizeTooLarge);
}

TEST_CASE("time-domain fixed point matches the frequency-domain steady state") {
    std::mt19937_64 rng(test::seed() + 31);
    std::uniform_real_distribution<double> wc(1.0, 4.0), off(0.3, 2.0), rabi(0.2, 1.5);
    for (int draw = 0; draw < 4; ++draw) {
        const double c = wc(rng);
        const ModelParams p = ModelParams::bandgap(c + off(rng), c, rabi(rng));
        const Reservoir res(p);
        const double t_max = std::clamp(60.0 / (2.0 * res.g(0.0).real()), 2000.0, 4000.0);
        const auto run = oracle::timedomain_means(p, t_max, 1.0 / (40.0 * c), 1000000);
        CAPTURE(p.omega_c);
        CAPTURE(p.omega_a);
        CAPTURE(p.rabi);
        CHECK(fixed_point_error(run.long_time, steady_state(p, res)) <= 1e-6);
    }
}

TEST_CASE("halving dt moves the fixed point by at most 1e-7") {
    const ModelParams p = ModelParams::bandgap(3.0, 2.0, 0.7);
    const double dt = 1.0 / 80.0;
    const auto coarse = oracle::timedomain_means(p, 400.0, dt, 1000000);
    const auto fine = oracle::timedomain_means(p, 400.0, dt / 2.0, 1000000);
    CHECK(fixed_point_error(coarse.long_time, fine.long_time) <= 1e-7);
}

TEST_CASE("bandgap preset long-time limit") {
    const ModelParams p = ModelParams::bandgap(100.5, 100.0, 0.25);
    const auto run = oracle::timedomain_means(p, 2500.0, 2.5e-4, 1u << 30);
    CHECK(fixed_point_error(run.long_time, steady_state(p)) <= 1e-6);
}

TEST_CASE("Markovian reference records") {
    auto r = oracle::markovian_reference(ModelParams::markovian(1.0, 0.0));
    CHECK(r.s_z == -1.0);
    CHECK(r.squeezing_threshold);
    r = oracle::markovian_reference(ModelParams::markovian(1.0, 0.5));
    CHECK(r.squeezing_threshold);
    r = oracle::markovian_reference(ModelParams::markovian(1.0, 1.0));
    CHECK(r.s_z == Approx(-1.0 / 3.0).epsilon(1e-15));
    CHECK_FALSE(r.squeezing_threshold);
    REQUIRE(r.expected_peaks.size() == 3);
    CHECK(r.expected_peaks[0] == -1.0);
    CHECK(r.expected_peaks[1] == 0.0);
    CHECK(r.expected_peaks[2] == 1.0);
    CHECK_THROWS_AS(oracle::markovian_reference(ModelParams::bandgap(101.0, 100.0, 0.2)), ConfigError);
}

TEST_CASE("memory time-scale ratio") {
    const ModelParams p = ModelParams::bandgap(100.5, 100.0, 0.25);
    CHECK(oracle::memory_timescale_ratio(p) == Approx(1600.0));
    const ModelParams strong = ModelParams::bandgap(150.0, 100.0, 0.01);
    const double damping = 2.0 * Reservoir(strong).g(0.0).real();
    CHECK(oracle::memory_timescale_ratio(strong) == Approx(400.0 / damping));
    CHECK(std::isinf(oracle::memory_timescale_ratio(ModelParams::markovian(1.0, 1.0))));
}
