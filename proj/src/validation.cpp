#include "pbg/validation.hpp"

#include <algorithm>
#include <cmath>

#include "pbg/bloch.hpp"
#include "pbg/errors.hpp"
#include "pbg/kernels.hpp"
#include "pbg/oracles.hpp"
#include "pbg/report.hpp"

namespace pbg {

namespace {

double max_component_error(const SteadyState& a, const SteadyState& b) {
    return std::max({std::abs(a.s_minus - b.s_minus), std::abs(a.s_plus - b.s_plus), std::abs(a.s_z - b.s_z)});
}

template <class F>
ValidationCheck guarded(const std::string& name, F body) {
    ValidationCheck c{name, false, {}};
    try {
        body(c);
    } catch (const Error& e) {
        c.passed = false;
        c.details["error"] = e.what();
    }
    return c;
}

ValidationCheck kernel_oracle_check(const ModelParams& p) {
    return guarded("kernel_oracle", [&](ValidationCheck& c) {
        const double branch = p.omega_c - p.omega_a;
        const FrequencyGrid grid{branch - 2.0 * p.omega_c, branch + 4.0 * p.omega_c, 401};
        double far = 0.0, near = 0.0, gap_real = 0.0;
        for (std::size_t i = 0; i < grid.n_points; ++i) {
            const double w = grid.at(i);
            const cplx exact = kernel_g(w, p);
            const cplx numeric = oracle::kernel_numeric_oracle(w, p);
            const double rel = std::abs(numeric - exact) / std::abs(exact);
            double& slot = std::abs(w - branch) <= 0.05 * p.beta ? near : far;
            slot = std::max(slot, rel);
            if (w < branch) gap_real = std::max(gap_real, std::abs(numeric.real()));
        }
        c.passed = far <= 1e-6 && near <= 1e-3 && gap_real <= 1e-6;
        c.details = {{"params", params_json(p)},
                     {"max_rel_error_away_from_branch_point", far},
                     {"max_rel_error_near_branch_point", near},
                     {"max_abs_real_part_in_gap", gap_real},
                     {"tolerances", {{"away", 1e-6}, {"near", 1e-3}, {"gap_real", 1e-6}}}};
    });
}

ValidationCheck markovian_reference_check() {
    return guarded("markovian_reference", [](ValidationCheck& c) {
        double worst = 0.0;
        bool thresholds = true;
        for (double rabi : {0.0, 0.25, 0.5, 1.0, 3.0, 10.0}) {
            const auto p = ModelParams::markovian(1.0, rabi);
            const auto ref = oracle::markovian_reference(p);
            const auto ss = steady_state(p);
            worst = std::max(worst, std::abs(ss.s_z - ref.s_z));
            thresholds = thresholds && (ref.squeezing_threshold == (rabi <= 0.5));
        }
        c.passed = worst <= 1e-10 && thresholds;
        c.details = {{"max_s_z_error", worst}, {"threshold_predicate_ok", thresholds}, {"tolerance", 1e-10}};
    });
}

ValidationCheck markovian_timedomain_check() {
    return guarded("timedomain_markovian", [](ValidationCheck& c) {
        const auto p = ModelParams::markovian(1.0, 1.0);
        const auto run = oracle::timedomain_means(p, 20.0, 0.005, 4000);
        const auto& last = run.samples.back();
        const SteadyState expected{{0.0, -1.0 / 3.0}, {0.0, 1.0 / 3.0}, {-1.0 / 3.0, 0.0}};
        const double err = max_component_error({last.s_minus, last.s_plus, last.s_z}, expected);
        c.passed = err <= 1e-6;
        c.details = {{"t", last.t}, {"max_error_vs_fixed_point", err}, {"tolerance", 1e-6}};
    });
}

ValidationCheck bandgap_timedomain_check(const ModelParams& p) {
    return guarded("timedomain_bandgap", [&](ValidationCheck& c) {
        const Reservoir res(p);
        const auto ss = steady_state(p, res);
        const double rate = 2.0 * res.g(0.0).real();
        const double t_max = std::clamp(60.0 / rate, 2000.0, 4000.0);
        const double dt = 1.0 / (40.0 * p.omega_c);
        const auto run = oracle::timedomain_means(p, t_max, dt, 1u << 30);
        const double err = max_component_error(run.long_time, ss);
        c.passed = err <= 1e-6;
        c.details = {{"params", params_json(p)},
                     {"t_max", t_max},
                     {"dt", dt},
                     {"max_error_vs_frequency_domain", err},
                     {"memory_timescale_ratio", oracle::memory_timescale_ratio(p)},
                     {"tolerance", 1e-6}};
    });
}

}  // namespace

bool ValidationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

nlohmann::ordered_json ValidationReport::to_json() const {
    nlohmann::ordered_json j;
    j["version"] = version_string;
    j["passed"] = passed();
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"details", c.details}});
    return j;
}

ValidationReport run_validation(const ModelParams& p) {
    ModelParams bg = ModelParams::bandgap(102.0, 100.0, 0.25);
    if (p.is_bandgap() && p.omega_a > p.omega_c) bg = p;
    ModelParams edge = bg;
    edge.omega_a = edge.omega_c;

    ValidationReport r;
    r.checks.push_back(kernel_oracle_check(edge));
    r.checks.push_back(kernel_oracle_check(bg));
    r.checks.push_back(markovian_reference_check());
    r.checks.push_back(markovian_timedomain_check());
    r.checks.push_back(bandgap_timedomain_check(bg));
    return r;
}

}  // namespace pbg
