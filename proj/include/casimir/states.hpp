#pragma once

#include <string>
#include <variant>
#include <vector>

namespace casimir {

struct Vacuum {};
struct Thermal {
    double beta;
};
// in-band squeezing is scale/sigma
struct SqueezedBand {
    double sigma;
    double omega_center;
    double scale = 1.0;
};
struct SqueezedDelta {
    double omega_center;
};
struct SqueezedConst {
    double xi;
};

using FieldState = std::variant<Vacuum, Thermal, SqueezedBand, SqueezedDelta, SqueezedConst>;

void validate(const FieldState& state);
std::string describe(const FieldState& state);

double coth(double x);
// coth(x) - 1 without cancellation
double coth_minus_one(double x);

// spectral weight F(k); depends on |k| only
double weight(const FieldState& state, double k);
// F(k) - 1
double weight_excess(const FieldState& state, double k);
// points where F is discontinuous
std::vector<double> weight_breakpoints(const FieldState& state);

struct AsymptoticsReport {
    std::vector<double> sigma;
    std::vector<double> in_band_weight;
    bool monotone_nonincreasing = false;
    bool approaches_one = false;   // weight at the largest sigma within tol of 1
    bool diverges_small = false;   // weight at the smallest sigma above large_threshold
    bool ok() const { return monotone_nonincreasing && approaches_one && diverges_small; }
};

// Checks cosh(2 scale/sigma) over the grid (ascending sigma).
AsymptoticsReport weight_asymptotics_check(const FieldState& state, const std::vector<double>& sigma_grid,
                                           double tol = 1e-3, double large_threshold = 1e3);

}  // namespace casimir
