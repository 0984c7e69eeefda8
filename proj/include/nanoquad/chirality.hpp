#pragma once

// Directional asymmetry of the quadrupole coupling and of guided spontaneous
// emission, with the large-r / large-a limits.

#include <cmath>
#include <optional>

#include "nanoquad/errors.hpp"
#include "nanoquad/fiber_mode.hpp"
#include "nanoquad/quadrupole.hpp"

namespace nanoquad {

/// (|S+|^2 - |S-|^2) / (|S+|^2 + |S-|^2); empty when both couplings vanish.
inline std::optional<double> asymmetry(Complex s_plus, Complex s_minus) {
    const double p = std::norm(s_plus);
    const double m = std::norm(s_minus);
    if (p + m == 0.0) return std::nullopt;
    return (p - m) / (p + m);
}

struct AsymmetryReport {
    int q = 0;
    Polarization xi = Polarization::X;
    std::optional<double> eta;
    Complex S_plus, S_minus;
    CylindricalPoint position;
    FiberSpec fiber;
};

/// Asymmetry of S_q between f = +1 and f = -1 for the normalized (f, xi) mode,
/// via the generic gradient contraction.
inline AsymmetryReport asymmetry_report(const ModeSolution& mode, int q, Polarization xi, const CylindricalPoint& pos,
                                        QuantizationFrame frame = QuantizationFrame::AlongY) {
    AsymmetryReport rep;
    rep.q = q;
    rep.xi = xi;
    rep.position = pos;
    rep.fiber = mode.fiber;
    rep.S_plus = coupling_factor_generic(cartesian_gradient(mode, normalized_field(Direction::Forward, xi), pos), frame, q);
    rep.S_minus =
        coupling_factor_generic(cartesian_gradient(mode, normalized_field(Direction::Backward, xi), pos), frame, q);
    rep.eta = asymmetry(rep.S_plus, rep.S_minus);
    return rep;
}

/// True for the (q, xi) channels that do not vanish on the x axis with the y quantization axis.
constexpr bool x_axis_channel_nonvanishing(int q, Polarization xi) {
    return std::abs(q) == 1 ? xi == Polarization::Y : xi == Polarization::X;
}

/// eta_q^(xi) for an atom on the positive x axis, quantization axis y, from the mode functions.
inline double asymmetry_closed_form(const ModeSolution& mode, double r, int q, Polarization xi) {
    if (std::abs(q) > 2) throw DomainError("|q| must be <= 2");
    if (!x_axis_channel_nonvanishing(q, xi))
        throw UndefinedChannel("coupling vanishes identically for q = " + std::to_string(q) + ", xi = " +
                               axis_name(xi));
    if (!(r >= mode.fiber.radius)) throw DomainError("closed-form asymmetry requires r >= a");
    if (q == 0) return 0.0;
    const auto p = mode_profile(mode, r);
    const double beta = mode.beta;
    const double pm = q > 0 ? 1.0 : -1.0;
    Complex x, y;
    if (std::abs(q) == 1) {
        x = beta * p.e_phi + p.e_z / r;
        y = p.de_phi + I / r * (p.e_r + I * p.e_phi);
    } else {
        x = p.de_z + I * beta * p.e_r;
        y = beta * p.e_z + I * p.de_r;
    }
    return -pm * 2.0 * std::real(x * std::conj(y)) / (std::norm(x) + std::norm(y));
}

struct LimitingAsymmetry {
    double eta1;  // |eta_{+-1}^(y)|
    double eta2;  // |eta_{+-2}^(x)|
};

/// r -> infinity limits at fixed fiber; eta_{+-q} = +-value.
inline LimitingAsymmetry asymmetry_limits_large_r(const ModeSolution& mode) {
    const double b = mode.beta, k = mode.kappa;
    const double s = b * b + k * k;
    return {2.0 * b * k / s, 4.0 * b * k * s / (4.0 * b * b * k * k + s * s)};
}

/// Large-a limit of the r -> infinity values.
inline LimitingAsymmetry asymmetry_limits_large_a(double n1, double n2) {
    if (!(n1 > n2) || !(n2 > 0.0)) throw DomainError("requires n1 > n2 > 0");
    const double d = std::sqrt(n1 * n1 - n2 * n2);
    const double t = 2.0 * n1 * n1 - n2 * n2;
    return {2.0 * n1 * d / t, 4.0 * n1 * d * t / (4.0 * n1 * n1 * (n1 * n1 - n2 * n2) + t * t)};
}

/// Limit of eta_q^(xi) as the azimuth approaches `phi` along the circle of radius r,
/// for channels whose couplings both vanish exactly at that azimuth.
inline std::optional<double> asymmetry_azimuthal_limit(const ModeSolution& mode, int q, Polarization xi, double r,
                                                       double phi, double offset = 1e-6) {
    const auto lo = asymmetry_report(mode, q, xi, {r, phi - offset, 0.0}).eta;
    const auto hi = asymmetry_report(mode, q, xi, {r, phi + offset, 0.0}).eta;
    if (!lo || !hi) return std::nullopt;
    return 0.5 * (*lo + *hi);
}

// ---------------------------------------------------------------------------
// Guided spontaneous emission
// ---------------------------------------------------------------------------

/// Rate of emission into the (f, xi) guided mode at the transition frequency:
///     gamma = (hbar omega0 beta0' / 2 eps0) |C|^2 |S^(mu0)|^2
/// with S evaluated on the normalized profile. `mode` must be solved at omega0.
inline double guided_emission_rate(const TransitionSpec& t, const ModeSolution& mode, double beta_prime, Direction f,
                                   Polarization xi, const CylindricalPoint& pos) {
    const double c = coupling_coefficient(t);
    if (!(pos.r >= mode.fiber.radius)) throw DomainError("emission rate requires the atom outside the fiber");
    const Complex s = coupling_factor_generic(cartesian_gradient(mode, normalized_field(f, xi), pos), t.frame, t.q());
    return constants::hbar * mode.omega * beta_prime / (2.0 * constants::epsilon0) * c * c * std::norm(s);
}

/// Convenience overload solving the mode and beta' at omega0.
inline double guided_emission_rate(const TransitionSpec& t, const FiberSpec& fiber, double omega0, Direction f,
                                   Polarization xi, const CylindricalPoint& pos, const SolveOptions& options = {}) {
    const auto mode = solve_he11(fiber, omega0, options);
    return guided_emission_rate(t, mode, beta_derivative(fiber, omega0, options), f, xi, pos);
}

struct EmissionReport {
    int q = 0;
    double gamma_plus_x = 0.0, gamma_plus_y = 0.0;    // f = +1
    double gamma_minus_x = 0.0, gamma_minus_y = 0.0;  // f = -1
    double gamma_plus = 0.0, gamma_minus = 0.0;
    std::optional<double> eta_g;
};

inline EmissionReport emission_asymmetry(const TransitionSpec& t, const ModeSolution& mode, double beta_prime,
                                         const CylindricalPoint& pos) {
    EmissionReport rep;
    rep.q = t.q();
    const auto rate = [&](Direction f, Polarization xi) {
        return guided_emission_rate(t, mode, beta_prime, f, xi, pos);
    };
    rep.gamma_plus_x = rate(Direction::Forward, Polarization::X);
    rep.gamma_plus_y = rate(Direction::Forward, Polarization::Y);
    rep.gamma_minus_x = rate(Direction::Backward, Polarization::X);
    rep.gamma_minus_y = rate(Direction::Backward, Polarization::Y);
    rep.gamma_plus = rep.gamma_plus_x + rep.gamma_plus_y;
    rep.gamma_minus = rep.gamma_minus_x + rep.gamma_minus_y;
    if (rep.gamma_plus + rep.gamma_minus > 0.0)
        rep.eta_g = (rep.gamma_plus - rep.gamma_minus) / (rep.gamma_plus + rep.gamma_minus);
    return rep;
}

inline EmissionReport emission_asymmetry(const TransitionSpec& t, const FiberSpec& fiber, double omega0,
                                         const CylindricalPoint& pos, const SolveOptions& options = {}) {
    const auto mode = solve_he11(fiber, omega0, options);
    return emission_asymmetry(t, mode, beta_derivative(fiber, omega0, options), pos);
}

}  // namespace nanoquad
