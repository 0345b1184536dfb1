// validation.hpp: Cross-checks of the spectral model against the independent oracles

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "pbg/params.hpp"

namespace pbg {

struct ValidationCheck {
    std::string name;
    bool passed{false};
    nlohmann::ordered_json details;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;

    bool passed() const;
    nlohmann::ordered_json to_json() const;
};

// Kernel oracle agreement, Markovian references and time-domain fixed points.
// Bandgap checks use `p` when it is a bandgap configuration with omega_a > omega_c
// and a built-in reference configuration otherwise.
ValidationReport run_validation(const ModelParams& p);

}  // namespace pbg
