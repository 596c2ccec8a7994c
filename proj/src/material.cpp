#include "casimir/material.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <fmt/format.h>

#include "casimir/errors.hpp"

namespace casimir {

void validate(const Material& mat)
{
    if (!(mat.omega0 > 0.0) || !std::isfinite(mat.omega0))
        throw DomainError(fmt::format("material: omega0 must be > 0 (got {})", mat.omega0));
    if (!(mat.omegaPl >= 0.0) || !std::isfinite(mat.omegaPl))
        throw DomainError(fmt::format("material: omegaPl must be >= 0 (got {})", mat.omegaPl));
    if (!(mat.gamma0 >= 0.0) || !std::isfinite(mat.gamma0))
        throw DomainError(fmt::format("material: gamma0 must be >= 0 (got {})", mat.gamma0));
}

Material make_material(double omega0, double omegaPl, double gamma0, Model model)
{
    Material m{omega0, omegaPl, gamma0, model};
    validate(m);
    return m;
}

Material vacuum_material() { return Material{1.0, 0.0, 0.0, Model::static_nd}; }

bool is_transparent(const Material& mat) { return mat.omegaPl == 0.0; }

bool is_lossless(const Material& mat)
{
    return mat.model == Model::static_nd || mat.omegaPl == 0.0 || mat.gamma0 == 0.0;
}

double spectral_density(const Material& mat, double omega) { return mat.gamma0 * omega; }

cplx damping_transform(const Material& mat, cplx s)
{
    const cplx den = s * s + mat.omega0 * mat.omega0 + s * mat.gamma0;
    const double scale = std::norm(s) + mat.omega0 * mat.omega0 + std::abs(s) * mat.gamma0;
    if (std::abs(den) <= 16.0 * std::numeric_limits<double>::epsilon() * scale)
        throw SingularEvaluation(fmt::format("damping_transform: pole at s = {}{:+}i", s.real(), s.imag()));
    return 1.0 / den;
}

cplx permittivity(const Material& mat, double omega)
{
    if (mat.omegaPl == 0.0) return 1.0;
    const double wp2 = mat.omegaPl * mat.omegaPl;
    if (mat.model == Model::static_nd) return 1.0 + wp2 / (mat.omega0 * mat.omega0);
    try {
        return 1.0 + wp2 * damping_transform(mat, cplx(0.0, -omega));
    } catch (const SingularEvaluation&) {
        throw SingularEvaluation(fmt::format(
            "permittivity: resonance singularity at omega = {} (gamma0 = 0, drude_lorentz)", omega));
    }
}

cplx refractive_index(const Material& mat, double omega)
{
    if (mat.omegaPl == 0.0) return 1.0;
    // evaluate at |omega|, conjugate for omega < 0 so n(-w) = n*(w) bit for bit
    const cplx eps = permittivity(mat, std::abs(omega));
    // Im eps >= 0 for w > 0; +0 keeps the root on the absorbing side when eps < 0
    cplx n = std::sqrt(cplx(eps.real(), std::abs(eps.imag())));
    if (n.real() < 0.0) n = -n;
    return omega < 0.0 ? std::conj(n) : n;
}

cplx surface_reflection(cplx n) { return (1.0 - n) / (1.0 + n); }

cplx surface_reflection(const Material& mat, double omega)
{
    return surface_reflection(refractive_index(mat, omega));
}

double fd_weight(const Material& mat, double omega)
{
    const cplx n = refractive_index(mat, omega);
    return 2.0 * n.real() * n.imag();
}

double fd_weight_from_damping(const Material& mat, double omega)
{
    if (mat.model == Model::static_nd || mat.omegaPl == 0.0) return 0.0;
    const cplx g = damping_transform(mat, cplx(0.0, -omega));
    return mat.omegaPl * mat.omegaPl * omega * mat.gamma0 * std::norm(g);
}

double permittivity_imag_axis(const Material& mat, double xi)
{
    if (mat.omegaPl == 0.0) return 1.0;
    const double wp2 = mat.omegaPl * mat.omegaPl;
    if (mat.model == Model::static_nd) return 1.0 + wp2 / (mat.omega0 * mat.omega0);
    return 1.0 + wp2 / (xi * xi + mat.omega0 * mat.omega0 + xi * mat.gamma0);
}

double refractive_index_imag_axis(const Material& mat, double xi)
{
    return std::sqrt(permittivity_imag_axis(mat, xi));
}

}  // namespace casimir
