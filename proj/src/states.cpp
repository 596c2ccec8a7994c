#include "casimir/states.hpp"

#include <cmath>
#include <type_traits>

#include <fmt/format.h>

#include "casimir/errors.hpp"

namespace casimir {

namespace {
template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
}  // namespace

void validate(const FieldState& state)
{
    std::visit(overloaded{
                   [](const Vacuum&) {},
                   [](const Thermal& s) {
                       if (!(s.beta > 0.0)) throw DomainError(fmt::format("thermal state: beta must be > 0 (got {})", s.beta));
                   },
                   [](const SqueezedBand& s) {
                       if (!(s.sigma > 0.0)) throw DomainError(fmt::format("squeezed_band: sigma must be > 0 (got {})", s.sigma));
                       if (!(s.omega_center > 0.0))
                           throw DomainError(fmt::format("squeezed_band: omega_center must be > 0 (got {})", s.omega_center));
                   },
                   [](const SqueezedDelta& s) {
                       if (!(s.omega_center > 0.0))
                           throw DomainError(fmt::format("squeezed_delta: omega_center must be > 0 (got {})", s.omega_center));
                   },
                   [](const SqueezedConst& s) {
                       if (!std::isfinite(s.xi)) throw DomainError("squeezed_const: xi must be finite");
                   },
               },
               state);
}

std::string describe(const FieldState& state)
{
    return std::visit(overloaded{
                          [](const Vacuum&) { return std::string("vacuum"); },
                          [](const Thermal& s) { return fmt::format("thermal(beta={:.17g})", s.beta); },
                          [](const SqueezedBand& s) {
                              return fmt::format("squeezed_band(sigma={:.17g};omega_center={:.17g};scale={:.17g})", s.sigma,
                                                 s.omega_center, s.scale);
                          },
                          [](const SqueezedDelta& s) { return fmt::format("squeezed_delta(omega_center={:.17g})", s.omega_center); },
                          [](const SqueezedConst& s) { return fmt::format("squeezed_const(xi={:.17g})", s.xi); },
                      },
                      state);
}

double coth(double x) { return 1.0 / std::tanh(x); }

double coth_minus_one(double x) { return 2.0 / std::expm1(2.0 * x); }

double weight_excess(const FieldState& state, double k)
{
    const double ak = std::abs(k);
    return std::visit(overloaded{
                          [](const Vacuum&) { return 0.0; },
                          [ak](const Thermal& s) { return coth_minus_one(0.5 * s.beta * ak); },
                          [ak](const SqueezedBand& s) {
                              return std::abs(ak - s.omega_center) <= 0.5 * s.sigma ? std::cosh(2.0 * s.scale / s.sigma) - 1.0 : 0.0;
                          },
                          [](const SqueezedDelta&) -> double {
                              throw DomainError("squeezed_delta has no pointwise weight; use force_delta_squeezed");
                          },
                          [](const SqueezedConst& s) { return std::cosh(2.0 * std::abs(s.xi)) - 1.0; },
                      },
                      state);
}

double weight(const FieldState& state, double k)
{
    if (const auto* t = std::get_if<Thermal>(&state)) return coth(0.5 * t->beta * std::abs(k));
    return 1.0 + weight_excess(state, k);
}

std::vector<double> weight_breakpoints(const FieldState& state)
{
    if (const auto* b = std::get_if<SqueezedBand>(&state)) {
        std::vector<double> out;
        const double lo = b->omega_center - 0.5 * b->sigma;
        if (lo > 0.0) out.push_back(lo);
        out.push_back(b->omega_center + 0.5 * b->sigma);
        return out;
    }
    return {};
}

AsymptoticsReport weight_asymptotics_check(const FieldState& state, const std::vector<double>& sigma_grid, double tol,
                                           double large_threshold)
{
    const auto* band = std::get_if<SqueezedBand>(&state);
    if (!band) throw DomainError("weight_asymptotics_check requires a squeezed_band state");
    if (sigma_grid.empty()) throw DomainError("weight_asymptotics_check: empty sigma grid");
    AsymptoticsReport rep;
    rep.monotone_nonincreasing = true;
    for (std::size_t i = 0; i < sigma_grid.size(); ++i) {
        const double s = sigma_grid[i];
        if (!(s > 0.0)) throw DomainError("weight_asymptotics_check: sigma must be > 0");
        if (i > 0 && !(s > sigma_grid[i - 1])) throw DomainError("weight_asymptotics_check: sigma grid must ascend");
        SqueezedBand b = *band;
        b.sigma = s;
        const double w = weight(FieldState{b}, b.omega_center);
        if (!rep.in_band_weight.empty() && w > rep.in_band_weight.back()) rep.monotone_nonincreasing = false;
        rep.sigma.push_back(s);
        rep.in_band_weight.push_back(w);
    }
    rep.approaches_one = std::abs(rep.in_band_weight.back() - 1.0) <= tol;
    rep.diverges_small = rep.in_band_weight.front() >= large_threshold;
    return rep;
}

}  // namespace casimir
