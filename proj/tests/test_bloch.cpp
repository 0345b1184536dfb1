#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "pbg/bloch.hpp"
#include "pbg/errors.hpp"
#include "support.hpp"

using namespace pbg;
using doctest::Approx;

namespace {

constexpr cplx I{0.0, 1.0};

// Exact resonance-fluorescence spectrum from the quantum regression theorem for
// the Markovian optical Bloch equations dv/dt = A v + b, v = (<s->, <s+>, <sz>):
//   C+-(w) = 2 Re [ e_- . (i w - A)^{-1} u0 ],  u0 = <dsigma_+(0) dv(0)>.
double regression_spectrum(double w, double gamma, double rabi) {
    Mat3 a = mat3_zero();
    a[0][0] = -gamma / 2.0;
    a[0][2] = I * rabi / 2.0;
    a[1][1] = -gamma / 2.0;
    a[1][2] = -I * rabi / 2.0;
    a[2][0] = I * rabi;
    a[2][1] = -I * rabi;
    a[2][2] = -gamma;
    const double sz = -gamma * gamma / (gamma * gamma + 2.0 * rabi * rabi);
    const cplx sm = I * rabi / gamma * sz;
    const cplx sp = std::conj(sm);
    // sigma+ sigma- = (1 + sz)/2, sigma+ sigma+ = 0, sigma+ sz = -sigma+
    const cplx u0[3] = {(1.0 + sz) / 2.0 - sp * sm, -sp * sp, -sp - sp * sz};
    Mat3 r = mat3_zero();
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) r[j][k] = (j == k ? I * w : cplx{}) - a[j][k];
    const Mat3 inv = mat3_inverse(r);
    cplx v = 0.0;
    for (int k = 0; k < 3; ++k) v += inv[0][k] * u0[k];
    return 2.0 * v.real();
}

}  // namespace

TEST_CASE("steady state of the undriven atom is the ground state") {
    for (const ModelParams& p : {ModelParams::markovian(1.0, 0.0), ModelParams::bandgap(101.0, 100.0, 0.0)}) {
        const SteadyState ss = steady_state(p);
        CHECK(std::abs(ss.s_minus) == 0.0);
        CHECK(std::abs(ss.s_plus) == 0.0);
        CHECK(std::abs(ss.s_z - cplx(-1.0, 0.0)) < 1e-15);
    }
}

TEST_CASE("Markovian steady state at Gamma = Omega = 1") {
    const SteadyState ss = steady_state(ModelParams::markovian(1.0, 1.0));
    CHECK(std::abs(ss.s_z - cplx(-1.0 / 3.0, 0.0)) < 1e-15);
    CHECK(std::abs(ss.s_minus - cplx(0.0, -1.0 / 3.0)) < 1e-15);
    CHECK(std::abs(ss.s_plus - cplx(0.0, 1.0 / 3.0)) < 1e-15);
}

TEST_CASE("transition exactly at the edge has no DC damping") {
    ModelParams p = ModelParams::bandgap(100.0, 100.0, 0.25);
    CHECK_THROWS_AS(steady_state(p), SingularSteadyState);
    p.rabi = 0.0;
    CHECK_THROWS_AS(steady_state(p), SingularSteadyState);
}

TEST_CASE("steady state invariants over random parameters") {
    std::mt19937_64 rng(test::seed() + 10);
    for (int draw = 0; draw < 500; ++draw) {
        const ModelParams p = draw % 2 ? test::random_bandgap(rng) : test::random_markovian(rng);
        const Reservoir res(p);
        const SteadyState ss = steady_state(p, res);
        CHECK(std::abs(ss.s_plus - std::conj(ss.s_minus)) <= 1e-12);
        CHECK(std::abs(ss.s_z.imag()) <= 1e-12);
        CHECK(ss.s_z.real() >= -1.0);
        CHECK(ss.s_z.real() <= 0.0);
        const double scale = std::max(p.rabi, res.g(0.0).real());
        CHECK(steady_state_residual(p, res, ss) <= 1e-12 * scale);
    }
}

TEST_CASE("Markovian population matches -Gamma^2/(Gamma^2 + 2 Omega^2)") {
    std::mt19937_64 rng(test::seed() + 11);
    for (int draw = 0; draw < 1000; ++draw) {
        const ModelParams p = test::random_markovian(rng);
        const double want = -p.gamma * p.gamma / (p.gamma * p.gamma + 2.0 * p.rabi * p.rabi);
        CHECK(std::abs(steady_state(p).s_z - want) <= 1e-10);
    }
}

TEST_CASE("bandgap population from |g(0)|") {
    const ModelParams p = ModelParams::bandgap(100.5, 100.0, 0.25);
    const double g2 = std::norm(Reservoir(p).g(0.0));
    CHECK(steady_state(p).s_z.real() == Approx(-2.0 * g2 / (2.0 * g2 + p.rabi * p.rabi)).epsilon(1e-14));
}

TEST_CASE("response matrix entries") {
    SUBCASE("undriven atom decouples") {
        const ModelParams p = ModelParams::bandgap(101.0, 100.0, 0.0);
        const Reservoir res(p);
        const Mat3 m = response_matrix(0.3, p, res);
        CHECK(m[Minus][Minus] == -I * 0.3 + res.g(0.3));
        CHECK(m[Plus][Plus] == -I * 0.3 + res.gc(0.3));
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k)
                if (j != k) CHECK(m[j][k] == cplx{});
    }
    SUBCASE("Markovian Gamma = Omega = 1 at w = 0") {
        const ModelParams p = ModelParams::markovian(1.0, 1.0);
        const Mat3 m = response_matrix(0.0, p, Reservoir(p));
        const Mat3 want = {{{0.5, 0.0, -0.5 * I}, {0.0, 0.5, 0.5 * I}, {-I, I, 1.0}}};
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(m[j][k] - want[j][k]) < 1e-15);
    }
    SUBCASE("inverse reproduces random right-hand sides") {
        std::mt19937_64 rng(test::seed() + 12);
        std::normal_distribution<double> n01;
        std::uniform_real_distribution<double> wdist(-3.0, 3.0);
        for (int draw = 0; draw < 300; ++draw) {
            const ModelParams p = draw % 2 ? test::random_bandgap(rng) : test::random_markovian(rng);
            const Reservoir res(p);
            const double w = wdist(rng);
            const Mat3 m = response_matrix(w, p, res);
            const Mat3 inv = mat3_inverse(m);
            const cplx n[3] = {{n01(rng), n01(rng)}, {n01(rng), n01(rng)}, {n01(rng), n01(rng)}};
            cplx x[3] = {};
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) x[j] += inv[j][k] * n[k];
            double err = 0.0, norm = 0.0;
            for (int j = 0; j < 3; ++j) {
                cplx back = 0.0;
                for (int k = 0; k < 3; ++k) back += m[j][k] * x[k];
                err += std::norm(back - n[j]);
                norm += std::norm(n[j]);
            }
            CHECK(std::sqrt(err) <= 1e-10 * std::sqrt(norm));
        }
    }
}

TEST_CASE("singular matrix is reported") {
    CHECK_THROWS_AS(mat3_inverse(mat3_zero()), SingularResponse);
    Mat3 rank2 = mat3_zero();
    rank2[0][0] = 1.0;
    rank2[1][1] = 1.0;
    CHECK_THROWS_AS(mat3_inverse(rank2), SingularResponse);
}

TEST_CASE("noise densities") {
    SUBCASE("vanish inside the gap") {
        const ModelParams p = ModelParams::bandgap(100.5, 100.0, 0.25);
        const Reservoir res(p);
        const SteadyState ss = steady_state(p, res);
        for (double w : {-0.51, -1.0, -50.0}) CHECK(mat3_max_abs(noise_density(w, res, ss)) == 0.0);
    }
    SUBCASE("undriven atom keeps only N(-,+)") {
        const ModelParams p = ModelParams::bandgap(101.0, 100.0, 0.0);
        const Reservoir res(p);
        const SteadyState ss = steady_state(p, res);
        Mat3 n = noise_density(0.2, res, ss);
        CHECK(n[Minus][Plus] == cplx(res.noise_kernel(0.2), 0.0));
        CHECK(n[Minus][Plus].real() > 0.0);
        n[Minus][Plus] = 0.0;
        CHECK(mat3_max_abs(n) == 0.0);
    }
    SUBCASE("Markovian Gamma = Omega = 1") {
        const ModelParams p = ModelParams::markovian(1.0, 1.0);
        const Reservoir res(p);
        const SteadyState ss = steady_state(p, res);
        const Mat3 n = noise_density(0.7, res, ss);
        CHECK(std::abs(n[Z][Z] - 4.0 / 3.0) < 1e-15);
        CHECK(std::abs(n[Minus][Plus] - 1.0) < 1e-15);
        CHECK(std::abs(n[Minus][Z] - 2.0 * ss.s_minus) < 1e-15);
        CHECK(std::abs(n[Z][Plus] - 2.0 * ss.s_plus) < 1e-15);
        int nonzero = 0;
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k) nonzero += n[j][k] != cplx{};
        CHECK(nonzero == 4);
    }
}

TEST_CASE("fluctuation spectra basics") {
    SUBCASE("no drive, no normally ordered fluctuations") {
        const ModelParams p = ModelParams::bandgap(101.0, 100.0, 0.0);
        const Reservoir res(p);
        const SteadyState ss = steady_state(p, res);
        for (double w : {-0.5, 0.0, 0.3, 5.0}) CHECK(fluctuation_spectra(w, p, res, ss)[Plus][Minus] == cplx{});
    }
    SUBCASE("gap frequencies give the zero matrix") {
        const ModelParams p = ModelParams::bandgap(100.3, 100.0, 0.25);
        const Reservoir res(p);
        const SteadyState ss = steady_state(p, res);
        for (double w : {-0.31, -0.6, -10.0}) CHECK(mat3_max_abs(fluctuation_spectra(w, p, res, ss)) == 0.0);
    }
    SUBCASE("C(+,-) is real and non-negative") {
        std::mt19937_64 rng(test::seed() + 13);
        std::uniform_real_distribution<double> wdist(-5.0, 5.0);
        for (int draw = 0; draw < 200; ++draw) {
            const ModelParams p = draw % 2 ? test::random_bandgap(rng) : test::random_markovian(rng);
            const Reservoir res(p);
            const SteadyState ss = steady_state(p, res);
            for (int k = 0; k < 20; ++k) {
                const Mat3 c = fluctuation_spectra(wdist(rng), p, res, ss);
                const double scale = mat3_max_abs(c);
                CHECK(std::abs(c[Plus][Minus].imag()) <= 1e-10 * scale);
                CHECK(c[Plus][Minus].real() >= -1e-12 * scale);
            }
        }
    }
}

TEST_CASE("Markovian intensity matches the quantum regression spectrum") {
    for (double rabi : {0.0, 0.3, 1.0, 4.0, 10.0}) {
        const ModelParams p = ModelParams::markovian(1.0, rabi);
        const Reservoir res(p);
        const SteadyState ss = steady_state(p, res);
        double worst = 0.0, scale = 0.0;
        for (double w = -15.0; w <= 15.0; w += 0.25) {
            const double got = fluctuation_spectra(w, p, res, ss)[Plus][Minus].real();
            const double want = regression_spectrum(w, 1.0, rabi);
            worst = std::max(worst, std::abs(got - want));
            scale = std::max(scale, std::abs(want));
        }
        CAPTURE(rabi);
        CHECK(worst <= 1e-12 * std::max(scale, 1e-300));
    }
}
