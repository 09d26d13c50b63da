#pragma once

#include <numbers>

// CODATA 2018 values, SI units.
namespace iontrap::constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double hbar = 1.054571817e-34;           // J s
inline constexpr double speed_of_light = 299792458.0;     // m / s
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F / m
inline constexpr double atomic_mass_unit = 1.66053906660e-27;    // kg
inline constexpr double elementary_charge = 1.602176634e-19;     // C
inline constexpr double euler_gamma = 0.5772156649;

}  // namespace iontrap::constants
