#pragma once

#include <vector>

#include "casimir/scattering.hpp"
#include "casimir/states.hpp"

namespace casimir {

// Point in a vacuum region where the stress tensor is sampled.
struct RegionPoint {
    double x = 0.0;
    Region region = Region::gap;
};

// checks region against the layout; slabs are rejected
RegionPoint make_point(const CavityConfig& cfg, double x);

enum class StressComponent { tt, tx, xx };

// Bath piece: sum over slabs of 8 w^2 Re(n) Im(n) coth(beta w/2) int_slab [bracket of G, dG/dx],
// the x' integral done in closed form through the mode intensities.
double stress_bath_integrand(const CavityConfig& cfg, double betaL, double betaR, const RegionPoint& p, double omega,
                             StressComponent comp);
double txx_bath_integrand(const CavityConfig& cfg, double betaL, double betaR, const RegionPoint& p, double omega);

// Initial-conditions piece: (1/k) F(k) sum over the two incident modes of the bracket at x.
double stress_ic_integrand(const CavityConfig& cfg, const FieldState& state, const RegionPoint& p, double k,
                           StressComponent comp);
double txx_ic_integrand(const CavityConfig& cfg, const FieldState& state, const RegionPoint& p, double k);

struct PressureCheck {
    // max over the grid of |(Ext - Int) - closed form| / scale,
    // scale = max(|closed|, |Ext|, |Int|) at that point (0 if all vanish)
    double ic_max_dev = 0.0;
    double bath_max_dev = 0.0;
    // same for the alternative closed-form bath bracket; expected to be O(1)
    double bath_printed_max_dev = 0.0;
    double worst_ic_at = 0.0;
    double worst_bath_at = 0.0;
    std::size_t points = 0;
};

// Ext is the left exterior (x = -(a/2 + d) - a), Int the gap centre.
PressureCheck pressure_difference(const CavityConfig& cfg, double betaL, double betaR, const FieldState& state,
                                  const std::vector<double>& omega_grid);

}  // namespace casimir
