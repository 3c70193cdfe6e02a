#pragma once

#include <numbers>

// CODATA 2018 values, SI units. The first four are exact by definition of
// the 2019 SI.
namespace rydpol::constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double sqrt_pi = 1.772453850905516027298167483341145;

/// Speed of light in vacuum [m/s] (exact).
inline constexpr double speed_of_light = 299'792'458.0;
/// Elementary charge [C] (exact).
inline constexpr double elementary_charge = 1.602'176'634e-19;
/// Planck constant [J s] (exact).
inline constexpr double planck = 6.626'070'15e-34;
/// Reduced Planck constant [J s], h/2pi = 1.054571817...e-34.
inline constexpr double hbar = 1.054'571'817'646'156'4e-34;
/// Bohr radius [m].
inline constexpr double bohr_radius = 5.291'772'109'03e-11;
/// Vacuum permittivity [F/m].
inline constexpr double vacuum_permittivity = 8.854'187'812'8e-12;

} // namespace rydpol::constants
