#include "casimir/forces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

constexpr cplx I{0.0, 1.0};

cplx phase(double theta) { return {std::cos(theta), std::sin(theta)}; }

double re_im(cplx n) { return n.real() * n.imag(); }

// Slab integrals of the bath term. With q = e^{i w n d}, kappa = (2/(1+n))/(1 - rn^2 q^2),
// I1 = int_0^d e^{-2 w Im(n) u} du and I2 = int_0^d e^{2 i w Re(n) u} du:
//   K = |kappa|^2 [I1 (1 + |rn|^2 |q|^2) - 2 Re(rn* q*^2 I2)]
//   M = |kappa|^2 q* [I2 - rn* I1 - rn e^{2 i w Re(n) d} I1 + |rn|^2 q^2 conj(I2)]
struct SlabKernel {
    double K;
    cplx M;
};

SlabKernel slab_kernel(cplx n, double d, double w)
{
    const cplx rn = surface_reflection(n);
    const cplx q = std::exp(I * w * n * d);
    const double att = w * n.imag();
    const double ph = w * n.real();
    const double I1 = att == 0.0 ? d : -std::expm1(-2.0 * att * d) / (2.0 * att);
    const cplx I2 = ph == 0.0 ? cplx(d) : phase(ph * d) * (std::sin(ph * d) / ph);
    const double k2 = std::norm(2.0 / (1.0 + n)) / std::norm(1.0 - rn * rn * q * q);
    const cplx qc = std::conj(q);
    const double K = k2 * (I1 * (1.0 + std::norm(rn) * std::norm(q)) - 2.0 * std::real(std::conj(rn) * qc * qc * I2));
    const cplx M = k2 * qc *
                   (I2 - std::conj(rn) * I1 - rn * phase(2.0 * ph * d) * I1 + std::norm(rn) * q * q * std::conj(I2));
    return {K, M};
}

double bath_weight(double beta, double w) { return coth(0.5 * beta * w); }

std::vector<double> material_breakpoints(const Material& m)
{
    std::vector<double> out;
    if (m.model != Model::drude_lorentz || m.omegaPl == 0.0) return out;
    out.push_back(m.omega0);
    out.push_back(std::sqrt(m.omega0 * m.omega0 + m.omegaPl * m.omegaPl));
    // narrow resonance: bracket it so bisection starts close to it
    if (m.gamma0 < 1e-2 * m.omega0)
        for (double f : {-10.0, -1.0, 1.0, 10.0}) {
            const double x = m.omega0 + f * std::max(m.gamma0, 1e-12 * m.omega0);
            if (x > 0.0) out.push_back(x);
        }
    return out;
}

std::vector<double> merged(std::vector<double> a, const std::vector<double>& b)
{
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

void require_beta(double beta, const char* what)
{
    if (!(beta > 0.0)) throw DomainError(fmt::format("{}: beta must be > 0 (got {})", what, beta));
}

bool bath_vanishes(const CavityConfig& cfg) { return is_lossless(cfg.left) && is_lossless(cfg.right); }

void reject_delta(const FieldState& state, const char* what)
{
    if (std::holds_alternative<SqueezedDelta>(state))
        throw DomainError(fmt::format("{}: squeezed_delta has no pointwise weight; use force_delta_squeezed", what));
}

}  // namespace

double slab_absorbance(cplx n, double d, double omega)
{
    if (n.imag() == 0.0 || n.real() == 0.0) return 0.0;
    return 2.0 * omega * re_im(n) * slab_field_intensity(n, d, omega, 1.0, 0.0);
}

double ic_bracket_direct(const ScatteringSet& c)
{
    return 1.0 + std::norm(c.Rgt) + std::norm(c.T) - std::norm(c.Cgt) - std::norm(c.Dgt) - std::norm(c.Clt) -
           std::norm(c.Dlt);
}

double ic_bracket(const ScatteringSet& c)
{
    // 1 - tau = alpha + rho for each slab; collecting terms leaves only products of small quantities
    const double w = c.at;
    const double aL = slab_absorbance(c.nL, c.width, w);
    const double aR = slab_absorbance(c.nR, c.width, w);
    const double pL = std::norm(c.rL);
    const double pR = std::norm(c.rR);
    const double dL = 1.0 - std::norm(c.tL * c.tL - c.rL * c.rL);
    const cplx E = phase(2.0 * w * c.gap);
    const double num = aL * aR + 2.0 * aL * pR + 2.0 * aR * pL + 4.0 * pL * pR - pR * dL +
                       2.0 * std::real(c.rR * E * (std::conj(c.rL) * (c.tL * c.tL - c.rL * c.rL) - c.rL));
    return num / std::norm(c.den);
}

double ic_integrand(const CavityConfig& cfg, const FieldState& state, double k)
{
    return k * weight(state, k) * ic_bracket(cavity_coefficients(cfg, k, false));
}

namespace {

double bath_from(const ScatteringSet& c, double betaL, double betaR)
{
    const double w = c.at;
    const double d = c.width;
    const double wL = re_im(c.nL);
    const double wR = re_im(c.nR);
    if (wL == 0.0 && wR == 0.0) return 0.0;
    const double D2 = std::norm(c.den);
    const double pL = std::norm(c.rL);
    const double pR = std::norm(c.rR);
    const double aL = slab_absorbance(c.nL, d, w);
    const cplx E = phase(2.0 * w * c.gap);
    double out = 0.0;
    if (wL != 0.0) {
        const SlabKernel kl = slab_kernel(c.nL, d, w);
        const double BL = kl.K * (-2.0 * std::real(c.rL * c.rR * E) - pR * aL) / D2 +
                          2.0 * std::real(std::conj(E) * std::conj(c.rR) * std::conj(c.tL) / std::conj(c.den) * kl.M);
        out += wL * bath_weight(betaL, w) * BL;
    }
    if (wR != 0.0) {
        const SlabKernel kr = slab_kernel(c.nR, d, w);
        const double BR = -(aL + 2.0 * pL) * kr.K / D2;
        out += wR * bath_weight(betaR, w) * BR;
    }
    return 2.0 * w * w * out;
}

}  // namespace

double bath_integrand(const CavityConfig& cfg, double betaL, double betaR, double omega)
{
    return bath_from(cavity_coefficients(cfg, omega, false), betaL, betaR);
}

double bath_integrand_printed(const CavityConfig& cfg, double betaL, double betaR, double omega)
{
    // |T|^2/(|tL|^2 |tR|^2) = 1/|D|^2 and |tR|^2 (e^{2 w Im(nR) d} - 1) are formed as
    // single expressions; everything else is term by term
    const ScatteringSet c = cavity_coefficients(cfg, omega, false);
    const double w = omega;
    const double d = cfg.width;
    const cplx nL = c.nL, nR = c.nR, rL = c.rL, rR = c.rR, tL = c.tL, tR = c.tR, rnL = c.rnL, rnR = c.rnR;
    const cplx E = phase(2.0 * w * cfg.gap);
    const double D2 = std::norm(c.den);
    const cplx X = (1.0 - rL * rR * E) * (1.0 - rnL * rL) - rnL * rR * tL * tL * E;
    const cplx Y = (1.0 - rL * rR * E) * (rL - rnL) + rR * tL * tL * E;
    const double kL = w * nL.imag() * d;
    const double left = bath_weight(betaL, w) * std::norm(nL + 1.0) / std::norm(nL) / D2 *
                        (nL.real() * (-std::expm1(-2.0 * kL)) *
                             (std::norm(X) - std::norm(Y) + std::norm(tL) * (1.0 + std::norm(rR)) * (1.0 - std::norm(rnL))) +
                         2.0 * nL.imag() *
                             std::imag((phase(2.0 * w * nL.real() * d) - 1.0) *
                                       (X * std::conj(Y) + std::norm(tL) * (1.0 + std::norm(rR)) * rnL)));
    const double kR = w * nR.imag() * d;
    const double tR_scaled = slab_transmission_scaled(cfg.right, d, w);
    const double right = bath_weight(betaR, w) * std::norm(nR + 1.0) / std::norm(nR) *
                         (std::norm(tL) - 1.0 - std::norm(rL)) / D2 *
                         (nR.real() * tR_scaled * (-std::expm1(-2.0 * kR)) * (1.0 - std::norm(rnR)) -
                          2.0 * nR.imag() * std::norm(tR) * std::imag(rnR * (phase(2.0 * w * nR.real() * d) - 1.0)));
    return w / 8.0 * (left + right);
}

double dissipationless_integrand(const CavityConfig& cfg, const FieldState& state, double k)
{
    const SlabResponse L = slab_response(cfg.left, cfg.width, k);
    const SlabResponse R = slab_response(cfg.right, cfg.width, k);
    // 2 - (|tL|^2 (1 + |rR|^2) + |tR|^2 (1 + |rL|^2)) / D2 with |t|^2 = 1 - |r|^2, reduced so
    // the O(r^2) bracket is not formed as 2 minus something close to 2
    const cplx rho = L.r * R.r * phase(2.0 * k * cfg.gap);
    const double D2 = std::norm(1.0 - rho);
    const double br = 4.0 * (std::norm(rho) - rho.real()) / D2;
    return k * weight(state, k) * br;
}

double dissipationless_identical_integrand(const Material& mat, double a, double d, const FieldState& state, double k)
{
    const SlabResponse s = slab_response(mat, d, k);
    const double r2 = std::norm(s.r);
    return 2.0 * k * weight(state, k) * (1.0 - (1.0 - r2 * r2) / std::norm(1.0 - s.r * s.r * phase(2.0 * k * a)));
}

double halfspace_ic_integrand(const Material& matL, double beta_phi, double k)
{
    return k * coth(0.5 * beta_phi * k) * (1.0 + std::norm(surface_reflection(matL, k)));
}

double halfspace_bath_integrand(const Material& matL, const Material& matR, double a, double betaL, double betaR,
                                double omega)
{
    const cplx rL = surface_reflection(matL, omega);
    const cplx rR = surface_reflection(matR, omega);
    const double x = std::norm(rL), y = std::norm(rR);
    const double D2 = std::norm(1.0 - rL * rR * phase(2.0 * omega * a));
    return omega * (coth(0.5 * betaL * omega) * (1.0 - x) * (1.0 - (1.0 + y) / D2) -
                    coth(0.5 * betaR * omega) * (1.0 - y) * (1.0 + x) / D2);
}

double halfspace_total_integrand(const Material& matL, const Material& matR, double a, double betaL, double betaR,
                                 double beta_phi, double k)
{
    // coth = 1 + c: the unit parts combine to 4 (|rho|^2 - Re rho)/|1 - rho|^2
    const cplx rL = surface_reflection(matL, k);
    const cplx rR = surface_reflection(matR, k);
    const double x = std::norm(rL), y = std::norm(rR);
    const cplx rho = rL * rR * phase(2.0 * k * a);
    const double D2 = std::norm(1.0 - rho);
    const double vac = 4.0 * (std::norm(rho) - rho.real()) / D2;
    const double cphi = coth_minus_one(0.5 * beta_phi * k);
    const double cL = coth_minus_one(0.5 * betaL * k);
    const double cR = coth_minus_one(0.5 * betaR * k);
    const double exc = cphi * (1.0 + x) + cL * (1.0 - x) * (1.0 - (1.0 + y) / D2) - cR * (1.0 - y) * (1.0 + x) / D2;
    return k * (vac + exc);
}

double lifshitz_real_axis_integrand(const Material& matL, const Material& matR, double a, double beta, double k)
{
    const cplx rho = surface_reflection(matL, k) * surface_reflection(matR, k) * phase(2.0 * k * a);
    return 4.0 * k * coth(0.5 * beta * k) * (std::norm(rho) - rho.real()) / std::norm(1.0 - rho);
}

bool needs_regularization(const CavityConfig& cfg)
{
    auto stat = [](const Material& m) { return m.model == Model::static_nd && m.omegaPl > 0.0; };
    return stat(cfg.left) || stat(cfg.right);
}

std::vector<double> spectral_breakpoints(const CavityConfig& cfg)
{
    return merged(material_breakpoints(cfg.left), material_breakpoints(cfg.right));
}

void check_endpoint(const std::function<double(double)>& f, double k_min, const char* what)
{
    const double v1 = f(k_min);
    const double v2 = f(0.5 * k_min);
    if (!std::isfinite(v1) || !std::isfinite(v2))
        throw SingularEvaluation(fmt::format("{}: integrand not finite near k = 0 (k_min = {})", what, k_min));
    // a bracket that fails to vanish at k -> 0 shows up as growth under a thermal weight
    if (std::abs(v2) > 4.0 * std::abs(v1) + 1e-300)
        throw SingularEvaluation(fmt::format("{}: integrand grows as k -> 0 ({} at {}, {} at {})", what, v1, k_min, v2,
                                             0.5 * k_min));
}

QuadResult force_ic(const CavityConfig& cfg, const FieldState& state, const QuadratureSpec& spec)
{
    validate(cfg);
    validate(state);
    reject_delta(state, "force_ic");
    if (is_transparent(cfg.left) && is_transparent(cfg.right)) return {};
    auto f = [&](double k) { return ic_integrand(cfg, state, k); };
    check_endpoint(f, spec.k_min, "force_ic");
    const auto breaks = merged(spectral_breakpoints(cfg), weight_breakpoints(state));
    if (needs_regularization(cfg)) return integrate_regularized(f, spec, breaks);
    return integrate_semiinfinite(f, spec, breaks);
}

QuadResult force_bath(const CavityConfig& cfg, double betaL, double betaR, const QuadratureSpec& spec)
{
    validate(cfg);
    require_beta(betaL, "force_bath");
    require_beta(betaR, "force_bath");
    if (bath_vanishes(cfg)) return {};
    auto f = [&](double w) { return bath_integrand(cfg, betaL, betaR, w); };
    check_endpoint(f, spec.k_min, "force_bath");
    if (needs_regularization(cfg)) return integrate_regularized(f, spec, spectral_breakpoints(cfg));
    return integrate_semiinfinite(f, spec, spectral_breakpoints(cfg));
}

ForceBreakdown force_total(const CavityConfig& cfg, const FieldState& state, double betaL, double betaR,
                           const QuadratureSpec& spec)
{
    validate(cfg);
    validate(state);
    reject_delta(state, "force_total");
    require_beta(betaL, "force_total");
    require_beta(betaR, "force_total");
    ForceBreakdown out;
    out.cfg = cfg;
    out.state = state;
    out.betaL = betaL;
    out.betaR = betaR;
    if (is_transparent(cfg.left) && is_transparent(cfg.right)) {
        out.flags.push_back("vacuum_slabs");
        return out;
    }
    const bool no_bath = bath_vanishes(cfg);
    if (no_bath) out.flags.push_back("bath_zero");
    auto f = [&](double k) {
        const ScatteringSet c = cavity_coefficients(cfg, k, false);
        const double ic = k * weight(state, k) * ic_bracket(c);
        const double b = no_bath ? 0.0 : bath_from(c, betaL, betaR);
        return std::array<double, 2>{ic, b};
    };
    check_endpoint([&](double k) { return f(k)[0]; }, spec.k_min, "force_total (IC)");
    if (!no_bath) check_endpoint([&](double k) { return f(k)[1]; }, spec.k_min, "force_total (bath)");
    const auto breaks = merged(spectral_breakpoints(cfg), weight_breakpoints(state));
    const Channels<2> channels{{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}};
    const QuadResultN<2> r = needs_regularization(cfg) ? integrate_regularized_n<2>(f, spec, breaks, channels)
                                                       : integrate_semiinfinite_n<2>(f, spec, breaks, channels);
    if (r.regularized) out.flags.push_back("regularized");
    out.f_ic = r.value[0];
    out.f_b = no_bath ? 0.0 : r.value[1];
    out.err_ic = r.err[0];
    out.err_b = no_bath ? 0.0 : r.err[1];
    out.f_total = out.f_ic + out.f_b;
    out.err_total = no_bath ? out.err_ic : r.channel_err[2];
    out.panels = r.panels;
    return out;
}

QuadResult force_dissipationless(const CavityConfig& cfg, const FieldState& state, const QuadratureSpec& spec)
{
    validate(cfg);
    validate(state);
    reject_delta(state, "force_dissipationless");
    if (cfg.left.model != Model::static_nd || cfg.right.model != Model::static_nd)
        throw DomainError("force_dissipationless: both materials must use the static_nd model");
    if (is_transparent(cfg.left) && is_transparent(cfg.right)) return {};
    auto f = [&](double k) { return dissipationless_integrand(cfg, state, k); };
    check_endpoint(f, spec.k_min, "force_dissipationless");
    const auto breaks = weight_breakpoints(state);
    if (needs_regularization(cfg)) return integrate_regularized(f, spec, breaks);
    return integrate_semiinfinite(f, spec, breaks);
}

double force_delta_squeezed(const CavityConfig& cfg, double omega_center, const QuadratureSpec& spec)
{
    validate(cfg);
    validate(spec);
    if (!(omega_center > 0.0))
        throw DomainError(fmt::format("force_delta_squeezed: omega_center must be > 0 (got {})", omega_center));
    if (is_transparent(cfg.left) && is_transparent(cfg.right)) return 0.0;
    return omega_center * ic_bracket(cavity_coefficients(cfg, omega_center, false));
}

double reflection_imag_axis(const Material& mat, double xi)
{
    const double n = refractive_index_imag_axis(mat, xi);
    return (1.0 - n) / (1.0 + n);
}

double slab_reflection_imag_axis(const Material& mat, double d, double xi)
{
    const double n = refractive_index_imag_axis(mat, xi);
    const double rn = (1.0 - n) / (1.0 + n);
    const double e = std::exp(-2.0 * xi * n * d);
    return rn * (1.0 - e) / (1.0 - rn * rn * e);
}

namespace {

QuadResult matsubara_force(const std::function<double(double)>& rho, double beta, const QuadratureSpec& spec)
{
    const QuadResult s = matsubara_sum([&](double xi) { const double p = rho(xi); return xi * p / (1.0 - p); }, beta, spec);
    const double pre = 8.0 * std::numbers::pi / beta;
    return {pre * s.value, pre * s.err, s.panels, false};
}

}  // namespace

QuadResult lifshitz_matsubara(const Material& matL, const Material& matR, double a, double beta, const QuadratureSpec& spec)
{
    validate(matL);
    validate(matR);
    require_beta(beta, "lifshitz_matsubara");
    if (!(a > 0.0)) throw DomainError("lifshitz_matsubara: gap must be > 0");
    if (is_transparent(matL) || is_transparent(matR)) return {};
    return matsubara_force(
        [&](double xi) { return reflection_imag_axis(matL, xi) * reflection_imag_axis(matR, xi) * std::exp(-2.0 * xi * a); },
        beta, spec);
}

QuadResult lifshitz_matsubara_slabs(const CavityConfig& cfg, double beta, const QuadratureSpec& spec)
{
    validate(cfg);
    require_beta(beta, "lifshitz_matsubara_slabs");
    if (is_transparent(cfg.left) || is_transparent(cfg.right)) return {};
    return matsubara_force(
        [&](double xi) {
            return slab_reflection_imag_axis(cfg.left, cfg.width, xi) * slab_reflection_imag_axis(cfg.right, cfg.width, xi) *
                   std::exp(-2.0 * xi * cfg.gap);
        },
        beta, spec);
}

HalfspaceForces halfspace_forces(const Material& matL, const Material& matR, double a, double betaL, double betaR,
                                 double beta_phi, const QuadratureSpec& spec)
{
    validate(matL);
    validate(matR);
    if (!(a > 0.0)) throw DomainError("halfspace_forces: gap must be > 0");
    require_beta(betaL, "halfspace_forces");
    require_beta(betaR, "halfspace_forces");
    require_beta(beta_phi, "halfspace_forces");
    if (is_transparent(matL) && is_transparent(matR)) return {};
    auto f = [&](double k) { return halfspace_total_integrand(matL, matR, a, betaL, betaR, beta_phi, k); };
    check_endpoint(f, spec.k_min, "halfspace_forces");
    const CavityConfig cfg{a, 1.0, matL, matR};
    const QuadResult r = needs_regularization(cfg) ? integrate_regularized(f, spec, spectral_breakpoints(cfg))
                                                   : integrate_semiinfinite(f, spec, spectral_breakpoints(cfg));
    HalfspaceForces out;
    out.total = r.value;
    out.err_total = r.err;
    out.panels = r.panels;
    return out;
}

QuadResult halfspace_force_ic(const Material& matL, double beta_phi, const QuadratureSpec& spec)
{
    validate(matL);
    require_beta(beta_phi, "halfspace_force_ic");
    return integrate_semiinfinite([&](double k) { return halfspace_ic_integrand(matL, beta_phi, k); }, spec);
}

SweepBase sweep_base(const CavityConfig& cfg, double beta_phi, double betaL, double betaR, const QuadratureSpec& spec)
{
    validate(cfg);
    require_beta(beta_phi, "sweep_base");
    require_beta(betaL, "sweep_base");
    require_beta(betaR, "sweep_base");
    const bool no_bath = bath_vanishes(cfg);
    auto f = [&](double k) {
        const ScatteringSet c = cavity_coefficients(cfg, k, false);
        const double kb = k * ic_bracket(c);
        const double b = no_bath ? 0.0 : bath_from(c, betaL, betaR);
        return std::array<double, 3>{kb, coth_minus_one(0.5 * beta_phi * k) * kb, b};
    };
    check_endpoint([&](double k) { auto v = f(k); return v[0] + v[1]; }, spec.k_min, "sweep_base (IC)");
    const Channels<3> channels{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, {1.0, 1.0, 1.0}, {1.0, 0.0, 1.0}};
    const auto breaks = spectral_breakpoints(cfg);
    const QuadResultN<3> r = needs_regularization(cfg) ? integrate_regularized_n<3>(f, spec, breaks, channels)
                                                       : integrate_semiinfinite_n<3>(f, spec, breaks, channels);
    SweepBase out;
    out.f_vac = r.value[0];
    out.f_th_excess = r.value[1];
    out.f_b = r.value[2];
    out.err_vac = r.err[0];
    out.err_th = r.err[1];
    out.err_b = r.err[2];
    out.err_total = r.channel_err[3];
    out.err_vac_b = r.channel_err[4];
    out.panels = r.panels;
    return out;
}

QuadResult band_integral(const CavityConfig& cfg, double omega_center, double sigma, const QuadratureSpec& spec)
{
    validate(cfg);
    if (!(sigma > 0.0) || !(omega_center > 0.0)) throw DomainError("band_integral: sigma and omega_center must be > 0");
    const double lo = std::max(0.0, omega_center - 0.5 * sigma);
    const double hi = omega_center + 0.5 * sigma;
    return integrate_interval([&](double k) { return k * ic_bracket(cavity_coefficients(cfg, k, false)); }, lo, hi, spec,
                              spectral_breakpoints(cfg));
}

}  // namespace casimir
