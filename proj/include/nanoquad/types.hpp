#pragma once

#include <array>
#include <complex>

namespace nanoquad {

using Complex = std::complex<double>;
using CVec3 = std::array<Complex, 3>;
using RVec3 = std::array<double, 3>;
/// 3x3 complex matrix, row-major: m[i][j].
using CMat3 = std::array<std::array<Complex, 3>, 3>;

inline constexpr Complex I{0.0, 1.0};

/// Propagation direction along the fiber axis.
enum class Direction : int { Forward = +1, Backward = -1 };

constexpr double sign(Direction f) { return static_cast<double>(static_cast<int>(f)); }
constexpr Direction opposite(Direction f) {
    return f == Direction::Forward ? Direction::Backward : Direction::Forward;
}

/// Principal axis of a quasilinearly polarized guided field.
enum class Polarization { X, Y };

constexpr char axis_name(Polarization xi) { return xi == Polarization::X ? 'x' : 'y'; }

/// Atom (or probe) position in fiber cylindrical coordinates.
struct CylindricalPoint {
    double r = 0.0;
    double phi = 0.0;
    double z = 0.0;
};

}  // namespace nanoquad
