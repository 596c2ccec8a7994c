#pragma once

#include <complex>

namespace casimir {

using cplx = std::complex<double>;

enum class Model { drude_lorentz, static_nd };

// Frequencies in units of 1/a.
struct Material {
    double omega0 = 1.0;
    double omegaPl = 0.0;
    double gamma0 = 0.0;
    Model model = Model::drude_lorentz;
};

// throws DomainError unless omega0 > 0, omegaPl >= 0, gamma0 >= 0
Material make_material(double omega0, double omegaPl, double gamma0, Model model = Model::drude_lorentz);
void validate(const Material& mat);

Material vacuum_material();

// Im n == 0 for every real frequency (static_nd, or no plasma frequency)
bool is_lossless(const Material& mat);
bool is_transparent(const Material& mat);

// J(w) in units of m/(2 pi): gamma0 * w for the ohmic bath
double spectral_density(const Material& mat, double omega);

// G2(s) = 1/(s^2 + w0^2 + s gamma0)
cplx damping_transform(const Material& mat, cplx s);

cplx permittivity(const Material& mat, double omega);
cplx refractive_index(const Material& mat, double omega);
cplx surface_reflection(const Material& mat, double omega);
cplx surface_reflection(cplx n);
double fd_weight(const Material& mat, double omega);
// the same weight from the damping side: wPl^2 w gamma0 |G2(-i w)|^2
double fd_weight_from_damping(const Material& mat, double omega);

// imaginary-frequency response, s = xi real > 0: eps and n are real there
double permittivity_imag_axis(const Material& mat, double xi);
double refractive_index_imag_axis(const Material& mat, double xi);

}  // namespace casimir
