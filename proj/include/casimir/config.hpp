#pragma once

#include <optional>
#include <string>
#include <vector>

#include "casimir/quadrature.hpp"
#include "casimir/scattering.hpp"
#include "casimir/states.hpp"

namespace casimir {

// Everything a run needs, in natural units (a-units unless gap != 1).
struct RunConfig {
    std::string source;  // file the config came from
    CavityConfig cavity;
    std::optional<double> gap_meters;
    std::optional<FieldState> state;
    std::optional<double> beta_left, beta_right;  // bath temperatures
    QuadratureSpec quad;

    // sweep-sigma
    std::vector<double> sigma;
    std::vector<double> omega_center;
    double squeeze_scale = 1.0;

    // limits
    std::vector<double> gaps;    // defaults to cavity.gap
    std::vector<double> widths;  // defaults to cavity.width
    double xi = 0.5;
};

RunConfig load_config(const std::string& path);
// same, from text; `name` is used in diagnostics
RunConfig parse_config(const std::string& text, const std::string& name = "<string>");

// the accessors throw ConfigError naming the missing section/key
const FieldState& require_state(const RunConfig& cfg);
double require_beta_left(const RunConfig& cfg);
double require_beta_right(const RunConfig& cfg);

}  // namespace casimir
