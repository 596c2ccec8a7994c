#pragma once

#include <optional>
#include <string>
#include <vector>

#include "casimir/material.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/scattering.hpp"
#include "casimir/states.hpp"

namespace casimir {

struct ForceBreakdown {
    double f_ic = 0.0;
    double f_b = 0.0;
    double f_total = 0.0;  // f_ic + f_b
    double err_ic = 0.0;
    double err_b = 0.0;
    double err_total = 0.0;  // error of the sum (the pieces cancel)
    long panels = 0;
    std::vector<std::string> flags;
    // input echo
    CavityConfig cfg;
    FieldState state = Vacuum{};
    double betaL = 0.0;
    double betaR = 0.0;
};

// ---- pointwise integrands (k or omega > 0) ----

// 1 + |R>|^2 + |T|^2 - |C>|^2 - |D>|^2 - |C<|^2 - |D<|^2, rearranged in absorbances and
// reflectances so that no O(1) terms cancel
double ic_bracket(const ScatteringSet& sc);
// the same bracket summed literally, term by term
double ic_bracket_direct(const ScatteringSet& sc);
double ic_integrand(const CavityConfig& cfg, const FieldState& state, double k);

// 1 - |r|^2 - |t|^2 of one slab, from the absorbed power
double slab_absorbance(cplx n, double d, double omega);

double bath_integrand(const CavityConfig& cfg, double betaL, double betaR, double omega);
// long closed-form two-temperature bracket; diagnostic only
double bath_integrand_printed(const CavityConfig& cfg, double betaL, double betaR, double omega);

// lossless slabs only (uses |t|^2 = 1 - |r|^2)
double dissipationless_integrand(const CavityConfig& cfg, const FieldState& state, double k);
// identical slabs: 2 k F [1 - (1 - |r|^4)/|1 - r^2 e^{2ika}|^2]
double dissipationless_identical_integrand(const Material& mat, double a, double d, const FieldState& state, double k);

// d -> infinity forms
double halfspace_ic_integrand(const Material& matL, double beta_phi, double k);
double halfspace_bath_integrand(const Material& matL, const Material& matR, double a, double betaL, double betaR,
                                double omega);
// their sum, regrouped so the free-field pieces cancel analytically
double halfspace_total_integrand(const Material& matL, const Material& matR, double a, double betaL, double betaR,
                                 double beta_phi, double k);
// equilibrium real-axis form 4 k coth (|rho|^2 - Re rho)/|1 - rho|^2, rho = rL rR e^{2ika}
double lifshitz_real_axis_integrand(const Material& matL, const Material& matR, double a, double beta, double k);

// ---- forces ----

bool needs_regularization(const CavityConfig& cfg);
std::vector<double> spectral_breakpoints(const CavityConfig& cfg);

QuadResult force_ic(const CavityConfig& cfg, const FieldState& state, const QuadratureSpec& spec);
QuadResult force_bath(const CavityConfig& cfg, double betaL, double betaR, const QuadratureSpec& spec);
ForceBreakdown force_total(const CavityConfig& cfg, const FieldState& state, double betaL, double betaR,
                           const QuadratureSpec& spec);
QuadResult force_dissipationless(const CavityConfig& cfg, const FieldState& state, const QuadratureSpec& spec);
double force_delta_squeezed(const CavityConfig& cfg, double omega_center, const QuadratureSpec& spec);

// (8 pi / beta) sum_l xi_l rho/(1 - rho), rho = r_L(i xi) r_R(i xi) e^{-2 xi a}
QuadResult lifshitz_matsubara(const Material& matL, const Material& matR, double a, double beta,
                              const QuadratureSpec& spec);
// same with finite-width slab reflection at imaginary frequency
QuadResult lifshitz_matsubara_slabs(const CavityConfig& cfg, double beta, const QuadratureSpec& spec);
double reflection_imag_axis(const Material& mat, double xi);
double slab_reflection_imag_axis(const Material& mat, double d, double xi);

struct HalfspaceForces {
    double total = 0.0;
    double err_total = 0.0;
    // each piece diverges on its own (free-field pressure); reported only as a sum
    std::optional<double> f_ic;
    std::optional<double> f_b;
    long panels = 0;
};

HalfspaceForces halfspace_forces(const Material& matL, const Material& matR, double a, double betaL, double betaR,
                                 double beta_phi, const QuadratureSpec& spec);
// integrates the d -> infinity IC term on its own; throws NonConvergence
QuadResult halfspace_force_ic(const Material& matL, double beta_phi, const QuadratureSpec& spec);

// Sweep helpers: shared-panel vacuum IC, thermal excess and bath, and the band excess
struct SweepBase {
    double f_vac = 0.0, f_th_excess = 0.0, f_b = 0.0;
    double err_vac = 0.0, err_th = 0.0, err_b = 0.0;
    double err_total = 0.0;   // of f_vac + f_th_excess + f_b
    double err_vac_b = 0.0;   // of f_vac + f_b
    long panels = 0;
};
SweepBase sweep_base(const CavityConfig& cfg, double beta_phi, double betaL, double betaR, const QuadratureSpec& spec);
// int over the band of k [bracket]; the squeezed IC force is f_vac + (cosh(2 scale/sigma) - 1) * this
QuadResult band_integral(const CavityConfig& cfg, double omega_center, double sigma, const QuadratureSpec& spec);

// endpoint check of the k -> 0 limit: integrand finite at k_min and k_min/2 and not growing
void check_endpoint(const std::function<double(double)>& f, double k_min, const char* what);

}  // namespace casimir
