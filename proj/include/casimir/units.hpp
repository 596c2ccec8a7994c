#pragma once

namespace casimir::units {

// CODATA 2018
inline constexpr double hbar_c_eV_m = 197.3269804e-9;
inline constexpr double k_B_eV_per_K = 8.617333262e-5;

// temperature in units of hbar c / L for a length unit L (metres)
inline double kelvin_to_natural(double kelvin, double length_unit_m) { return k_B_eV_per_K * kelvin * length_unit_m / hbar_c_eV_m; }

inline double natural_to_kelvin(double t, double length_unit_m) { return t * hbar_c_eV_m / (k_B_eV_per_K * length_unit_m); }

}  // namespace casimir::units
