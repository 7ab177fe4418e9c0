#pragma once

// Physical constants (CODATA 2018) and common unit factors.

namespace ptp::constants {

inline constexpr double elementary_charge = 1.602176634e-19;   // C (exact)
inline constexpr double atomic_mass_unit  = 1.66053906660e-27; // kg
inline constexpr double epsilon_0         = 8.8541878128e-12;  // F/m
inline constexpr double pi                = 3.141592653589793238462643383279502884;

inline constexpr double coulomb_constant = 1.0 / (4.0 * pi * epsilon_0); // N m^2 / C^2

inline constexpr double sr88_mass_amu = 87.9056121;

inline constexpr double ev = elementary_charge; // J per eV

} // namespace ptp::constants
