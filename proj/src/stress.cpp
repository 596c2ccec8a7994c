#include "casimir/stress.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "casimir/errors.hpp"
#include "casimir/forces.hpp"

namespace casimir {

namespace {

bool vacuum_region(Region r) { return r == Region::exterior_left || r == Region::gap || r == Region::exterior_right; }

// local bracket of a field value and its derivative at frequency w
double component(const FieldValue& f, double w, StressComponent comp)
{
    switch (comp) {
    case StressComponent::tt:
    case StressComponent::xx: return 0.5 * (w * w * std::norm(f.value) + std::norm(f.dx));
    case StressComponent::tx: return w * std::imag(f.value * std::conj(f.dx));
    }
    return 0.0;
}

// G(x, x') = A(x) B(x') / W for x' inside `slab`; returns bracket(A at x) * int |B|^2 / |W|^2
double slab_pair(const CavityConfig& cfg, const ScatteringSet& sc, const RegionPoint& p, Region slab,
                 StressComponent comp)
{
    const double w = sc.at;
    ModeFunction A, B;
    double W2 = 4.0 * w * w;
    switch (p.region) {
    case Region::exterior_left:
        A = make_mode(cfg, sc, ModeKind::phi_less, ModeNorm::exterior);
        B = make_mode(cfg, sc, ModeKind::phi_greater, ModeNorm::incident);
        break;
    case Region::exterior_right:
        A = make_mode(cfg, sc, ModeKind::phi_greater, ModeNorm::exterior);
        B = make_mode(cfg, sc, ModeKind::phi_less, ModeNorm::incident);
        break;
    default:
        W2 *= std::norm(sc.den);
        if (slab == Region::slab_left) {
            A = make_mode(cfg, sc, ModeKind::phi_greater, ModeNorm::gap);
            B = make_mode(cfg, sc, ModeKind::phi_less, ModeNorm::gap);
        } else {
            A = make_mode(cfg, sc, ModeKind::phi_less, ModeNorm::gap);
            B = make_mode(cfg, sc, ModeKind::phi_greater, ModeNorm::gap);
        }
        break;
    }
    return component(mode_eval_with_derivative(A, p.x), w, comp) * mode_intensity_integral(B, slab) / W2;
}

void check_point(const CavityConfig& cfg, const RegionPoint& p)
{
    if (!vacuum_region(p.region) || region_of(cfg, p.x) != p.region)
        throw RegionUnsupported(fmt::format("stress: x = {} is not in region {}", p.x, region_name(p.region)));
}

}  // namespace

RegionPoint make_point(const CavityConfig& cfg, double x)
{
    const RegionPoint p{x, region_of(cfg, x)};
    check_point(cfg, p);
    return p;
}

double stress_bath_integrand(const CavityConfig& cfg, double betaL, double betaR, const RegionPoint& p, double omega,
                             StressComponent comp)
{
    validate(cfg);
    check_point(cfg, p);
    if (!(omega > 0.0)) throw DomainError(fmt::format("stress: omega must be > 0 (got {})", omega));
    if (!(betaL > 0.0) || !(betaR > 0.0)) throw DomainError("stress: beta must be > 0");
    const ScatteringSet sc = cavity_coefficients(cfg, omega, false);
    double out = 0.0;
    for (const auto& [slab, n, beta] : {std::tuple{Region::slab_left, sc.nL, betaL},
                                        std::tuple{Region::slab_right, sc.nR, betaR}}) {
        const double src = n.real() * n.imag();
        if (src == 0.0) continue;  // no noise from a lossless slab
        out += src * coth(0.5 * beta * omega) * slab_pair(cfg, sc, p, slab, comp);
    }
    return 8.0 * omega * omega * out;
}

double txx_bath_integrand(const CavityConfig& cfg, double betaL, double betaR, const RegionPoint& p, double omega)
{
    return stress_bath_integrand(cfg, betaL, betaR, p, omega, StressComponent::xx);
}

double stress_ic_integrand(const CavityConfig& cfg, const FieldState& state, const RegionPoint& p, double k,
                           StressComponent comp)
{
    validate(cfg);
    check_point(cfg, p);
    if (!(k > 0.0)) throw DomainError(fmt::format("stress: k must be > 0 (got {})", k));
    const ScatteringSet sc = cavity_coefficients(cfg, k, false);
    double sum = 0.0;
    for (ModeKind kind : {ModeKind::phi_greater, ModeKind::phi_less})
        sum += component(mode_eval_with_derivative(make_mode(cfg, sc, kind, ModeNorm::incident), p.x), k, comp);
    return weight(state, k) * sum / k;
}

double txx_ic_integrand(const CavityConfig& cfg, const FieldState& state, const RegionPoint& p, double k)
{
    return stress_ic_integrand(cfg, state, p, k, StressComponent::xx);
}

PressureCheck pressure_difference(const CavityConfig& cfg, double betaL, double betaR, const FieldState& state,
                                  const std::vector<double>& omega_grid)
{
    validate(cfg);
    const RegionPoint ext = make_point(cfg, -(0.5 * cfg.gap + cfg.width) - cfg.gap);
    const RegionPoint in = make_point(cfg, 0.0);
    auto dev = [](double diff, double closed, double e, double i) {
        const double scale = std::max({std::abs(closed), std::abs(e), std::abs(i)});
        return scale == 0.0 ? 0.0 : std::abs(diff - closed) / scale;
    };
    PressureCheck out;
    for (double w : omega_grid) {
        const double ie = txx_ic_integrand(cfg, state, ext, w);
        const double ii = txx_ic_integrand(cfg, state, in, w);
        const double dic = dev(ie - ii, ic_integrand(cfg, state, w), ie, ii);
        if (dic > out.ic_max_dev) {
            out.ic_max_dev = dic;
            out.worst_ic_at = w;
        }
        const double be = txx_bath_integrand(cfg, betaL, betaR, ext, w);
        const double bi = txx_bath_integrand(cfg, betaL, betaR, in, w);
        const double db = dev(be - bi, bath_integrand(cfg, betaL, betaR, w), be, bi);
        if (db > out.bath_max_dev) {
            out.bath_max_dev = db;
            out.worst_bath_at = w;
        }
        const double printed = bath_integrand_printed(cfg, betaL, betaR, w);
        if (std::isfinite(printed))
            out.bath_printed_max_dev = std::max(out.bath_printed_max_dev, dev(be - bi, printed, be, bi));
        else
            out.bath_printed_max_dev = printed;
        ++out.points;
    }
    return out;
}

}  // namespace casimir
