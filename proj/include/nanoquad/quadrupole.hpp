#pragma once

// Electric quadrupole coupling between a hyperfine transition |F M> -> |F' M'>
// and a field gradient.
//
//   Omega = C_{F'M'FM} S_q,  q = M' - M
//   C     = (e / 2 hbar) (-1)^{F'-M'} (F' 2 F; -M' q M) <F'||T2||F>
//   S_q   = sum_ij u^{(q)}_ij dE_j/dx_i        (i, j in the quantization frame)
//
// The gradient matrix handed in from fiber_mode uses fiber axes with entry
// (i, j) = dE_j/dx_i; the quantization frame only permutes those axes.

#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <string>

#include "nanoquad/constants.hpp"
#include "nanoquad/errors.hpp"
#include "nanoquad/fiber_mode.hpp"
#include "nanoquad/numerics.hpp"
#include "nanoquad/special_functions.hpp"
#include "nanoquad/types.hpp"

namespace nanoquad {

/// Orientation of the atomic quantization frame {x1, x2, x3} relative to the fiber axes.
enum class QuantizationFrame {
    AlongZ,  // x1 || x, x2 || y, x3 || z
    AlongY,  // x1 || z, x2 || x, x3 || y
};

/// Fiber axis index (0 = x, 1 = y, 2 = z) carried by each quantization axis x1, x2, x3.
constexpr std::array<int, 3> frame_axes(QuantizationFrame frame) {
    return frame == QuantizationFrame::AlongZ ? std::array<int, 3>{0, 1, 2} : std::array<int, 3>{2, 0, 1};
}

/// Rows are the quantization axes expressed in fiber coordinates.
inline std::array<std::array<double, 3>, 3> frame_rotation(QuantizationFrame frame) {
    std::array<std::array<double, 3>, 3> m{};
    const auto axes = frame_axes(frame);
    for (int i = 0; i < 3; ++i) m[i][axes[i]] = 1.0;
    return m;
}

struct TransitionSpec {
    HalfInt F, M;        // lower level
    HalfInt F_up, M_up;  // upper level
    double reduced_me = 0.0;  // <n'F'||T2||nF>, m^2
    QuantizationFrame frame = QuantizationFrame::AlongY;

    /// q = M' - M; only meaningful when the difference is an integer.
    int q() const { return (M_up - M).as_int(); }
};

struct UMatrix {
    int q = 0;
    CMat3 entries{};
};

/// Spherical-component structure matrices of the quadrupole tensor.
inline UMatrix u_matrix(int q) {
    if (std::abs(q) > 2) throw DomainError("u_matrix: |q| must be <= 2");
    UMatrix u;
    u.q = q;
    auto& m = u.entries;
    const double sq = q > 0 ? 1.0 : -1.0;  // upper/lower sign of +-q
    switch (std::abs(q)) {
        case 0: {
            const double inv = 1.0 / std::sqrt(6.0);
            m[0][0] = -inv;
            m[1][1] = -inv;
            m[2][2] = 2.0 * inv;
            break;
        }
        case 1:
            m[0][2] = m[2][0] = -0.5 * sq;
            m[1][2] = m[2][1] = 0.5 * I;
            break;
        case 2:
            m[0][0] = 0.5;
            m[1][1] = -0.5;
            m[0][1] = m[1][0] = -0.5 * sq * I;
            break;
    }
    return u;
}

struct SelectionCheck {
    bool allowed = true;
    std::string reason;
};

namespace detail {

inline bool quadrupole_triangle(HalfInt lower, HalfInt upper) {
    return std::abs((upper - lower).twice()) <= 4 && (upper + lower).twice() >= 4;
}

/// F/M part of the selection rules; empty string when allowed.
inline std::string hyperfine_violation(const TransitionSpec& t) {
    if (!valid_projection(t.F, t.M) || !valid_projection(t.F_up, t.M_up)) return "invalid magnetic quantum number";
    if (!(t.M_up - t.M).is_integer()) return "M' - M is not an integer";
    if (!quadrupole_triangle(t.F, t.F_up)) return "|F' - F| <= 2 <= F' + F violated";
    if (std::abs(t.q()) > 2) return "|M' - M| <= 2 violated";
    return {};
}

}  // namespace detail

/// Quadrupole selection rules on (F, M), (J) and (L).
inline SelectionCheck check_selection_rules(const TransitionSpec& t, HalfInt J, HalfInt J_up, HalfInt L,
                                            HalfInt L_up) {
    if (auto why = detail::hyperfine_violation(t); !why.empty()) return {false, why};
    if (!detail::quadrupole_triangle(J, J_up)) return {false, "|J' - J| <= 2 <= J' + J violated"};
    const int dl = std::abs((L_up - L).twice());
    if (!(dl == 0 || dl == 4)) return {false, "|L' - L| must be 0 or 2"};
    if ((L_up + L).twice() < 4) return {false, "L' + L >= 2 violated"};
    return {};
}

/// |<n'J'||T2||nJ>| from an absorption oscillator strength.
///
/// The quadrupole line strength S = |<J'||e R^2 C2||J>|^2 obeys
///     (2J+1) f = m_e omega0 k0^2 S / (30 hbar e^2)
/// and T2 = sqrt(2/3) R^2 C2, hence
///     |<J'||T2||J>|^2 = 20 hbar (2J+1) f / (m_e omega0 k0^2).
inline double j_level_reduced_me(double f_osc, HalfInt J, double omega0) {
    if (f_osc < 0.0 || !std::isfinite(f_osc)) throw DomainError("oscillator strength must be nonnegative");
    if (!(omega0 > 0.0)) throw DomainError("transition frequency must be positive");
    const double k0 = omega0 / constants::c;
    const double g = J.twice() + 1.0;
    return std::sqrt(20.0 * constants::hbar * g * f_osc / (constants::electron_mass * omega0 * k0 * k0));
}

/// <(J'I)F'||T2||(JI)F> / <J'||T2||J> for a rank-2 operator acting on the electron only:
///     (-1)^{J'+I+F+2} sqrt((2F+1)(2F'+1)) {J' F' I; F J 2}
inline double hyperfine_reduction_factor(HalfInt J, HalfInt J_up, HalfInt F, HalfInt F_up, HalfInt I_nuc) {
    const HalfInt phase = J_up + I_nuc + F + HalfInt(2);
    if (!phase.is_integer()) throw DomainError("inconsistent angular momenta in hyperfine reduction");
    const double sign = phase.as_int() % 2 == 0 ? 1.0 : -1.0;
    const double dims = std::sqrt((F.twice() + 1.0) * (F_up.twice() + 1.0));
    return sign * dims * wigner_6j(J_up, F_up, I_nuc, F, J, HalfInt(2));
}

/// <n'F'||T2||nF> from the measured J-level oscillator strength.
inline double reduced_me_from_oscillator_strength(double f_osc, HalfInt J, HalfInt J_up, HalfInt F, HalfInt F_up,
                                                  HalfInt I_nuc, double omega0) {
    return hyperfine_reduction_factor(J, J_up, F, F_up, I_nuc) * j_level_reduced_me(f_osc, J, omega0);
}

/// C_{F'M'FM}; throws ForbiddenTransition when the F/M selection rules fail.
inline double coupling_coefficient(const TransitionSpec& t) {
    if (auto why = detail::hyperfine_violation(t); !why.empty()) throw ForbiddenTransition(why);
    const int phase = (t.F_up - t.M_up).as_int();
    const double sign = phase % 2 == 0 ? 1.0 : -1.0;
    const double three_j = wigner_3j(t.F_up, HalfInt(2), t.F, -t.M_up, t.M_up - t.M, t.M);
    return constants::e / (2.0 * constants::hbar) * sign * three_j * t.reduced_me;
}

/// <n'F'M'|Q_ij|nFM> in the quantization frame (units C m^2).
inline CMat3 quadrupole_matrix_elements(const TransitionSpec& t) {
    if (auto why = detail::hyperfine_violation(t); !why.empty()) throw ForbiddenTransition(why);
    const int phase = (t.F_up - t.M_up).as_int();
    const double sign = phase % 2 == 0 ? 1.0 : -1.0;
    const double three_j = wigner_3j(t.F_up, HalfInt(2), t.F, -t.M_up, t.M_up - t.M, t.M);
    const auto u = u_matrix(t.q());
    CMat3 q{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) q[i][j] = 3.0 * constants::e * u.entries[i][j] * sign * three_j * t.reduced_me;
    return q;
}

/// Express a fiber-frame gradient (i, j) = dE_j/dx_i in quantization-frame axes.
inline CMat3 to_quantization_frame(const CMat3& grad, QuantizationFrame frame) {
    const auto axes = frame_axes(frame);
    CMat3 out{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out[i][j] = grad[axes[i]][axes[j]];
    return out;
}

/// S_q = sum_ij u^{(q)}_ij dE_j/dx_i with the gradient permuted into the quantization frame.
inline Complex coupling_factor_generic(const CMat3& grad, QuantizationFrame frame, int q) {
    const auto u = u_matrix(q);
    const auto g = to_quantization_frame(grad, frame);
    Complex s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (u.entries[i][j] != 0.0) s += u.entries[i][j] * g[i][j];
    return s;
}

/// S_q for a free-space plane wave E0 eps e^{i k.x}: S_q = i E0 (k . u^{(q)} . eps).
/// Vectors are given in quantization-frame components. With `require_transverse`
/// a polarization that is not orthogonal to k is rejected.
inline Complex plane_wave_coupling(Complex e0, const CVec3& eps, const RVec3& k, int q,
                                   bool require_transverse = false) {
    if (require_transverse) {
        Complex dot = 0.0;
        double kn = 0.0;
        for (int i = 0; i < 3; ++i) {
            dot += k[i] * eps[i];
            kn += k[i] * k[i];
        }
        if (std::abs(dot) > 1e-12 * std::sqrt(kn)) throw DomainError("plane wave polarization not transverse");
    }
    const auto u = u_matrix(q);
    Complex s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += k[i] * u.entries[i][j] * eps[j];
    return I * e0 * s;
}

// ---------------------------------------------------------------------------
// Closed forms for the quantization axis along y (x1 || z, x2 || x, x3 || y)
// ---------------------------------------------------------------------------

namespace detail {

struct ClosedFormInputs {
    Complex er, ephi, ez, der, dephi, dez;
    double beta, r, f;
    Complex amp_phase;  // A e^{i f beta z}
};

inline ClosedFormInputs closed_form_inputs(const ModeSolution& mode, const FieldConfig& cfg,
                                           const CylindricalPoint& pos) {
    if (!(pos.r >= mode.fiber.radius)) throw DomainError("closed-form coupling requires the atom outside the fiber");
    const auto p = mode_profile(mode, pos.r);
    const double f = sign(cfg.direction);
    return {p.e_r,   p.e_phi, p.e_z, p.de_r, p.de_phi, p.de_z, mode.beta, pos.r, f,
            cfg.amplitude * std::polar(1.0, f * mode.beta * pos.z)};
}

}  // namespace detail

/// S_q for the y quantization axis at a general azimuth phi, written out
/// component by component from the mode functions.
inline Complex coupling_factor_closed_form(const ModeSolution& mode, const FieldConfig& cfg,
                                           const CylindricalPoint& pos, int q) {
    if (std::abs(q) > 2) throw DomainError("|q| must be <= 2");
    const auto v = detail::closed_form_inputs(mode, cfg, pos);
    const auto g = detail::angles(pos.phi, cfg.pol_phi0);
    const double c = g.c, s = g.s, cp = g.cp, sp = g.sp;
    const double cos2 = cp * c - sp * s;  // cos(2 phi - phi0)
    const double sin2 = sp * c + cp * s;  // sin(2 phi - phi0)
    const Complex sum = v.er + I * v.ephi;
    const double beta = v.beta, r = v.r, f = v.f;
    const double pm = q > 0 ? 1.0 : -1.0;

    const Complex radial_x = v.der * c * cp - I * v.dephi * s * sp;  // dE_x/dr / A
    const Complex radial_y = v.der * c * sp + I * v.dephi * s * cp;  // dE_y/dr / A

    switch (std::abs(q)) {
        case 0:
            return -v.amp_phase / std::sqrt(6.0) *
                   (I * beta * v.ez * c + radial_x * cp + sum / r * sin2 * sp - 2.0 * radial_y * sp -
                    2.0 / r * sum * cos2 * cp);
        case 1: {
            const Complex directional =
                I * beta * (v.er * c * sp + I * v.ephi * s * cp) + v.dez * c * sp - v.ez / r * s * cp;
            const Complex common = radial_y * cp - sum / r * cos2 * sp + radial_x * sp - sum / r * sin2 * cp;
            return -pm * f * v.amp_phase / 2.0 * directional + I * v.amp_phase / 2.0 * common;
        }
        default: {
            const Complex common = I * beta * v.ez * c - radial_x * cp - sum / r * sin2 * sp;
            const Complex directional =
                I * beta * (v.er * c * cp - I * v.ephi * s * sp) + v.dez * c * cp + v.ez / r * s * sp;
            return v.amp_phase / 2.0 * common - pm * I * f * v.amp_phase / 2.0 * directional;
        }
    }
}

/// Atom on the positive x axis (phi = 0), arbitrary polarization angle phi0.
inline Complex coupling_factor_on_x_axis(const ModeSolution& mode, const FieldConfig& cfg, double r, double z,
                                         int q) {
    if (std::abs(q) > 2) throw DomainError("|q| must be <= 2");
    const auto v = detail::closed_form_inputs(mode, cfg, {r, 0.0, z});
    const auto t0 = numerics::cos_sin(cfg.pol_phi0);
    const Complex sum = v.er + I * v.ephi;
    const double pm = q > 0 ? 1.0 : -1.0;
    switch (std::abs(q)) {
        case 0: return -v.amp_phase / std::sqrt(6.0) * (I * v.beta * v.ez + v.der - 2.0 / r * sum) * t0.cos;
        case 1:
            return v.amp_phase / 2.0 * (-pm * v.f * (v.beta * v.ephi + v.ez / r) + v.dephi + I / r * sum) * t0.sin;
        default:
            return v.amp_phase / 2.0 * (I * v.beta * v.ez - v.der - pm * v.f * (I * v.dez - v.beta * v.er)) * t0.cos;
    }
}

/// Atom on the positive y axis (phi = pi/2), arbitrary polarization angle phi0.
inline Complex coupling_factor_on_y_axis(const ModeSolution& mode, const FieldConfig& cfg, double r, double z,
                                         int q) {
    if (std::abs(q) > 2) throw DomainError("|q| must be <= 2");
    const auto v = detail::closed_form_inputs(mode, cfg, {r, constants::pi / 2.0, z});
    const auto t0 = numerics::cos_sin(cfg.pol_phi0);
    const Complex sum = v.er + I * v.ephi;
    const double pm = q > 0 ? 1.0 : -1.0;
    switch (std::abs(q)) {
        case 0: return -v.amp_phase / std::sqrt(6.0) * (I * v.beta * v.ez + sum / r - 2.0 * v.der) * t0.sin;
        case 1:
            return v.amp_phase / 2.0 *
                   (-pm * v.f * (I * v.beta * v.er + v.dez) * t0.sin + (I / r * sum + v.dephi) * t0.cos);
        default:
            return v.amp_phase / 2.0 *
                   ((I * v.beta * v.ez - sum / r) * t0.sin - pm * I * v.f * (v.beta * v.ephi + v.ez / r) * t0.cos);
    }
}

struct CouplingResult {
    Complex S_q;
    double C_coeff = 0.0;
    Complex Omega;
};

/// Rabi frequency of the transition driven by the quasilinear guided field at `pos`.
inline CouplingResult rabi_frequency(const TransitionSpec& t, const ModeSolution& mode, const FieldConfig& cfg,
                                     const CylindricalPoint& pos) {
    const double c = coupling_coefficient(t);
    if (!(pos.r >= mode.fiber.radius)) throw DomainError("rabi_frequency: atom must be outside the fiber");
    const Complex s = coupling_factor_generic(cartesian_gradient(mode, cfg, pos), t.frame, t.q());
    return {s, c, c * s};
}

}  // namespace nanoquad
