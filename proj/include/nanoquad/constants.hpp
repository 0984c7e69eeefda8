#pragma once

#include <numbers>

// CODATA 2018 values, SI units.
namespace nanoquad::constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double c = 299792458.0;                  // m/s
inline constexpr double hbar = 1.054571817e-34;           // J s
inline constexpr double e = 1.602176634e-19;              // C
inline constexpr double epsilon0 = 8.8541878128e-12;      // F/m
inline constexpr double mu0 = 1.25663706212e-6;           // N/A^2
inline constexpr double electron_mass = 9.1093837015e-31; // kg
inline constexpr double bohr_radius = 5.29177210903e-11;  // m
inline constexpr double vacuum_impedance = mu0 * c;       // ohm

/// Single-mode cutoff of the step-index fiber (first zero of J0, as quoted).
inline constexpr double single_mode_cutoff = 2.405;

}  // namespace nanoquad::constants
