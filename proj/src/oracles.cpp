#include "pbg/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "pbg/errors.hpp"

namespace pbg::oracle {

namespace {

using std::numbers::pi;
constexpr cplx I{0.0, 1.0};

struct Quadrature {
    cplx value;
    double error;
    double l1;
};

template <class F>
Quadrature integrate(F f, double a, double b, const IntegrationControl& ctrl) {
    double error = 0.0;
    double l1 = 0.0;
    const cplx v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, ctrl.max_depth,
                                                                                ctrl.rel_tol, &error, &l1);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || error > 10.0 * (ctrl.rel_tol * l1 + ctrl.abs_tol))
        throw NonConvergence("kernel oracle quadrature did not converge on [" + fmt::format("{}", a) + ", " +
                             fmt::format("{}", b) + "], error estimate " + fmt::format("{}", error));
    return {v, error, l1};
}

// int_U^inf sqrt(u) / ((u + wc)(u - x)) du for U > max(x, 0).
double tail_integral(double upper_start, double x, double omega_c) {
    const double su = std::sqrt(upper_start);
    const double sc = std::sqrt(omega_c);
    const double w = x + omega_c;
    if (std::abs(w) < 1e-6 * omega_c) {
        // x = -wc: integrand sqrt(u)/(u + wc)^2
        return pi / (2.0 * sc) - std::atan(su / sc) / sc + su / (upper_start + omega_c);
    }
    // partial fractions: [1/(u - x) - 1/(u + wc)] / (x + wc)
    const double f2_inf = -pi * sc;
    const double f2_u = 2.0 * su - 2.0 * sc * std::atan(su / sc);
    double f1_inf = 0.0;
    double f1_u = 2.0 * su;
    if (x > 0.0) {
        const double sx = std::sqrt(x);
        f1_u += sx * std::log((su - sx) / (su + sx));
    } else if (x < 0.0) {
        const double a = std::sqrt(-x);
        f1_inf = -a * pi;
        f1_u -= 2.0 * a * std::atan(su / a);
    }
    // the 2 sqrt(u) growth cancels between f1 and f2
    return ((f1_inf - f2_inf) - (f1_u - f2_u)) / w;
}

}  // namespace

cplx kernel_numeric_oracle(double omega, const ModelParams& p, const IntegrationControl& ctrl) {
    const double b32 = std::pow(p.beta, 1.5);
    const double wc = p.omega_c;
    const double target = omega + p.omega_a;  // W
    const double x = target - wc;
    const double lambda = p.omega_a + ctrl.cutoff_offset;
    if (!(lambda > std::max(target, wc) + 1.0))
        throw NonConvergence("oracle cutoff must lie above the evaluation frequency");
    const double t_max = std::sqrt(lambda - wc);

    // With w' = wc + t^2 the density is rho = (B/pi) t / (wc + t^2) and W - w' = x - t^2.
    // Everything is written in t: rebuilding sqrt(w' - wc) from w' would lose the
    // low digits of t^2 next to wc.
    auto rho_t = [&](double t) { return b32 * t / (pi * (wc + t * t)); };

    // Pieces split at the two scales of the integrand: sqrt|x| (pole or near-pole)
    // and sqrt(wc) (the 1/w' factor).
    std::vector<double> breaks = {0.0, std::sqrt(std::abs(x)), std::sqrt(wc), t_max};
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    auto piecewise = [&](const auto& f) {
        cplx sum{0.0, 0.0};
        for (std::size_t k = 0; k + 1 < breaks.size(); ++k) sum += integrate(f, breaks[k], breaks[k + 1], ctrl).value;
        return sum;
    };

    cplx finite;
    if (x <= 0.0) {
        // no pole on the path
        auto f = [&](double t) -> cplx { return I * (rho_t(t) * 2.0 * t / (x - t * t)); };
        finite = piecewise(f);
    } else {
        // i/(W - w' + i0) = i PV 1/(W - w') + pi delta(W - w'), with rho(W) subtracted
        // under the PV. The subtracted quotient factors exactly, so it has no
        // cancellation near t0 = sqrt(x):
        //   [rho(t) - rho(t0)] / (x - t^2) = -(B/pi) (wc - t t0) / ((wc + t^2)(wc + x)(t0 + t))
        const double t0 = std::sqrt(x);
        const double rho_w = rho_t(t0);
        auto f = [&](double t) -> cplx {
            const double quotient = -(b32 / pi) * (wc - t * t0) / ((wc + t * t) * (wc + x) * (t0 + t));
            return I * (quotient * 2.0 * t);
        };
        const cplx pv_smooth = piecewise(f);
        const double pv_log = std::log(x / (lambda - target));
        finite = pi * rho_w + I * (rho_w * pv_log) + pv_smooth;
    }
    // beyond Lambda: i int rho/(W - w') = -i (B/pi) int sqrt(u)/((u + wc)(u - x)) du
    const cplx tail = -I * (b32 / pi) * tail_integral(lambda - wc, x, wc);
    return finite + tail;
}

cplx kernel_c_numeric_oracle(double omega, const ModelParams& p, const IntegrationControl& ctrl) {
    return std::conj(kernel_numeric_oracle(-omega, p, ctrl));
}

cplx ExponentialKernel::transform(double omega) const {
    cplx sum = instantaneous;
    for (std::size_t j = 0; j < weight.size(); ++j) sum += weight[j] / (rate[j] - I * omega);
    return sum;
}

cplx ExponentialKernel::evaluate(double t) const {
    cplx sum{0.0, 0.0};
    for (std::size_t j = 0; j < weight.size(); ++j) sum += weight[j] * std::exp(-rate[j] * t);
    return sum;
}

ExponentialKernel bandedge_time_kernel(const ModelParams& p, const ExponentialFitControl& ctrl) {
    // Rotating the DOS integral onto w' = wc - i s (s >= 0) gives
    //   G(t) = e^{i delta t} int_0^inf w(s) e^{-s t} ds,
    //   w(s) = -i B sqrt(s) e^{-i pi/4} / (pi (wc - i s)),  delta = wa - wc.
    // Trapezoid rule in log s; the s > s_max remainder decays faster than any
    // resolved step and is kept as an instantaneous term.
    const double b32 = std::pow(p.beta, 1.5);
    const double delta = p.omega_a - p.omega_c;
    const cplx phase = std::polar(1.0, -pi / 4.0);
    const double u0 = std::log(ctrl.s_min);
    const double u1 = std::log(ctrl.s_max);
    const auto n = static_cast<std::size_t>(std::ceil(std::log10(ctrl.s_max / ctrl.s_min) * ctrl.nodes_per_decade)) + 1;
    const double h = (u1 - u0) / static_cast<double>(n - 1);

    ExponentialKernel k;
    k.weight.reserve(n);
    k.rate.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double s = std::exp(u0 + h * static_cast<double>(j));
        const cplx w = -I * b32 * std::sqrt(s) * phase / (pi * cplx{p.omega_c, -s});
        double trap = h;
        if (j == 0 || j + 1 == n) trap *= 0.5;
        k.weight.push_back(w * s * trap);
        k.rate.emplace_back(s, -delta);
    }
    k.instantaneous = 2.0 * b32 * phase / (pi * std::sqrt(ctrl.s_max));
    return k;
}

ExponentialKernel conjugate(const ExponentialKernel& k) {
    ExponentialKernel c;
    c.weight.reserve(k.weight.size());
    c.rate.reserve(k.rate.size());
    for (const auto& w : k.weight) c.weight.push_back(std::conj(w));
    for (const auto& r : k.rate) c.rate.push_back(std::conj(r));
    c.instantaneous = std::conj(k.instantaneous);
    return c;
}

namespace {

// Memory modes y_j(t) = int_0^t e^{-rate_j (t - t')} u(t') dt' for one kernel
// and one input signal, advanced exactly for piecewise-linear input.
// Modes with rate * dt > 40 forget everything within a step; their weighted sum
// collapses to a fixed combination of the last two inputs. The rest are stored
// as split real arrays so the hot loops stay free of complex-library calls.
class ModeBank {
public:
    ModeBank(const ExponentialKernel& k, double dt) : inst_(k.instantaneous) {
        for (std::size_t j = 0; j < k.weight.size(); ++j) {
            const cplx lam = k.rate[j];
            const cplx x = lam * dt;
            const cplx e = std::exp(-x);
            cplx p1, p2;
            if (std::abs(x) < 1e-3) {
                p1 = dt * (1.0 - x / 2.0 + x * x / 6.0 - x * x * x / 24.0);
                p2 = dt * (0.5 - x / 6.0 + x * x / 24.0 - x * x * x / 120.0);
            } else {
                p1 = (1.0 - e) / lam;
                p2 = (1.0 - p1 / dt) / lam;
            }
            // y' = e y + (p1 - p2) u0 + p2 u1
            const cplx a = p1 - p2;
            const cplx c = k.weight[j];
            if (x.real() > 40.0) {
                fast_a_ += c * a;
                fast_b_ += c * p2;
                continue;
            }
            er_.push_back(e.real()); ei_.push_back(e.imag());
            ar_.push_back(a.real()); ai_.push_back(a.imag());
            br_.push_back(p2.real()); bi_.push_back(p2.imag());
            cr_.push_back(c.real()); ci_.push_back(c.imag());
        }
        yr_.assign(er_.size(), 0.0);
        yi_.assign(er_.size(), 0.0);
    }

    // Memory integral at the current state, with input value u now.
    cplx memory(cplx u) const { return slow_ + fast_ + inst_ * u; }

    // Memory integral one step ahead for input u0 -> u1, without committing.
    cplx preview(cplx u0, cplx u1) const {
        double sr = 0.0, si = 0.0;
        for (std::size_t j = 0; j < yr_.size(); ++j) {
            double nr, ni;
            next(j, u0, u1, nr, ni);
            sr += cr_[j] * nr - ci_[j] * ni;
            si += cr_[j] * ni + ci_[j] * nr;
        }
        return cplx{sr, si} + fast_a_ * u0 + fast_b_ * u1 + inst_ * u1;
    }

    void advance(cplx u0, cplx u1) {
        double sr = 0.0, si = 0.0;
        for (std::size_t j = 0; j < yr_.size(); ++j) {
            double nr, ni;
            next(j, u0, u1, nr, ni);
            yr_[j] = nr;
            yi_[j] = ni;
            sr += cr_[j] * nr - ci_[j] * ni;
            si += cr_[j] * ni + ci_[j] * nr;
        }
        slow_ = {sr, si};
        fast_ = fast_a_ * u0 + fast_b_ * u1;
    }

private:
    void next(std::size_t j, cplx u0, cplx u1, double& nr, double& ni) const {
        const double u0r = u0.real(), u0i = u0.imag(), u1r = u1.real(), u1i = u1.imag();
        nr = er_[j] * yr_[j] - ei_[j] * yi_[j] + ar_[j] * u0r - ai_[j] * u0i + br_[j] * u1r - bi_[j] * u1i;
        ni = er_[j] * yi_[j] + ei_[j] * yr_[j] + ar_[j] * u0i + ai_[j] * u0r + br_[j] * u1i + bi_[j] * u1r;
    }

    cplx inst_;
    cplx fast_a_{}, fast_b_{};
    cplx slow_{}, fast_{};
    std::vector<double> er_, ei_, ar_, ai_, br_, bi_, cr_, ci_, yr_, yi_;
};

}  // namespace

TimeDomainResult timedomain_means(const ModelParams& p, double t_max, double dt, std::size_t sample_every) {
    p.validate();
    if (!(dt > 0.0) || !(t_max > dt)) throw StepSizeTooLarge("need 0 < dt < t_max");
    ExponentialKernel g_kernel;
    if (p.is_bandgap()) {
        const double memory_time = 1.0 / (4.0 * p.omega_c);
        if (dt > 0.1 * memory_time * (1.0 + 1e-12) || dt * p.rabi > 0.1)
            throw StepSizeTooLarge("dt = " + fmt::format("{}", dt) + " does not resolve the memory time 1/(4 omega_c) = " +
                                   fmt::format("{}", memory_time) + " with 10 steps");
        g_kernel = bandedge_time_kernel(p);
    } else {
        if (dt * std::max(p.gamma, p.rabi) > 0.1)
            throw StepSizeTooLarge("dt = " + fmt::format("{}", dt) + " too large for gamma/rabi");
        g_kernel.instantaneous = {0.5 * p.gamma, 0.0};
    }
    const ExponentialKernel gc_kernel = conjugate(g_kernel);

    // memory of s_-, s_+ and of the population source (1 + s_z) under G and Gc
    ModeBank mem_minus(g_kernel, dt);
    ModeBank mem_plus(gc_kernel, dt);
    ModeBank mem_pop_g(g_kernel, dt);
    ModeBank mem_pop_gc(gc_kernel, dt);

    const double half = 0.5 * p.rabi;
    const auto steps = static_cast<std::size_t>(std::llround(t_max / dt));
    const std::size_t avg_from = steps / 2;
    sample_every = std::max<std::size_t>(sample_every, 1);

    cplx sm{0.0, 0.0}, sp{0.0, 0.0}, sz{-1.0, 0.0};
    cplx acc_m{}, acc_p{}, acc_z{};
    std::size_t acc_n = 0;

    TimeDomainResult out;
    out.samples.reserve(steps / sample_every + 2);
    out.samples.push_back({0.0, sm, sp, sz});

    for (std::size_t k = 0; k < steps; ++k) {
        const cplx pop = 1.0 + sz;
        const cplx fm = I * half * sz - mem_minus.memory(sm);
        const cplx fp = -I * half * sz - mem_plus.memory(sp);
        const cplx fz = I * p.rabi * (sm - sp) - mem_pop_g.memory(pop) - mem_pop_gc.memory(pop);

        const cplx qm = sm + dt * fm;
        const cplx qp = sp + dt * fp;
        const cplx qz = sz + dt * fz;
        const cplx qpop = 1.0 + qz;

        const cplx gm = I * half * qz - mem_minus.preview(sm, qm);
        const cplx gp = -I * half * qz - mem_plus.preview(sp, qp);
        const cplx gz = I * p.rabi * (qm - qp) - mem_pop_g.preview(pop, qpop) - mem_pop_gc.preview(pop, qpop);

        const cplx nm = sm + 0.5 * dt * (fm + gm);
        const cplx np = sp + 0.5 * dt * (fp + gp);
        const cplx nz = sz + 0.5 * dt * (fz + gz);
        const cplx npop = 1.0 + nz;

        mem_minus.advance(sm, nm);
        mem_plus.advance(sp, np);
        mem_pop_g.advance(pop, npop);
        mem_pop_gc.advance(pop, npop);
        sm = nm;
        sp = np;
        sz = nz;

        if (k + 1 > avg_from) {
            acc_m += sm;
            acc_p += sp;
            acc_z += sz;
            ++acc_n;
        }
        if ((k + 1) % sample_every == 0 || k + 1 == steps)
            out.samples.push_back({static_cast<double>(k + 1) * dt, sm, sp, sz});
    }
    const double inv = 1.0 / static_cast<double>(std::max<std::size_t>(acc_n, 1));
    out.long_time = {acc_m * inv, acc_p * inv, acc_z * inv};
    return out;
}

MarkovianReference markovian_reference(const ModelParams& p) {
    if (p.is_bandgap()) throw ConfigError("mode", "markovian_reference requires markovian mode");
    const double g2 = p.gamma * p.gamma;
    const double w2 = p.rabi * p.rabi;
    MarkovianReference r;
    r.s_z = -g2 / (g2 + 2.0 * w2);
    r.expected_peaks = {-p.rabi, 0.0, p.rabi};
    r.squeezing_threshold = w2 <= 0.25 * g2;
    return r;
}

double memory_timescale_ratio(const ModelParams& p) {
    if (!p.is_bandgap()) return std::numeric_limits<double>::infinity();
    const Reservoir res(p);
    const double atomic = std::max(p.rabi, 2.0 * res.g(0.0).real());
    if (atomic == 0.0) return std::numeric_limits<double>::infinity();
    return 4.0 * p.omega_c / atomic;
}

}  // namespace pbg::oracle
