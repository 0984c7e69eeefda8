#pragma once

// HE11 guided mode of a step-index fiber (core index n1, radius a, cladding
// index n2) and the quasilinearly polarized field built from it.
//
// Conventions
//   - time dependence e^{-i omega t}, propagation factor e^{i f beta z};
//   - profile (e_r, e_phi, e_z) is the forward, counter-clockwise circular
//     HE11 mode, E = (e_r r + e_phi phi + e_z z) e^{i phi} e^{i beta z};
//   - common phase chosen so that e_r is purely imaginary, e_phi and e_z are
//     purely real and e_phi(a+) > 0;
//   - profiles are normalized so that
//         int_0^{2pi} dphi int_0^inf n_ref^2 |e^{(mu)}|^2 r dr = 1
//     for the quasilinear mode e^{(mu)}, i.e. pi int n_ref^2 (|e_r|^2 + |e_phi|^2 + |e_z|^2) r dr = 1.
//     Profile values therefore carry units of 1/m.
//
// Inside (r < a), with h = sqrt(n1^2 k^2 - beta^2):
//     e_r   = i A beta/(2h) [(1-s) J0(hr) - (1+s) J2(hr)]
//     e_phi =  -A beta/(2h) [(1-s) J0(hr) + (1+s) J2(hr)]
//     e_z   =   A J1(hr)
// Outside (r >= a), with q = kappa = sqrt(beta^2 - n2^2 k^2):
//     e_r   = i A beta/(2q) J1(ha)/K1(qa) [(1-s) K0(qr) + (1+s) K2(qr)]
//     e_phi =  -A beta/(2q) J1(ha)/K1(qa) [(1-s) K0(qr) - (1+s) K2(qr)]
//     e_z   =   A J1(ha)/K1(qa) K1(qr)
// where s = (1/u^2 + 1/w^2) / (J1'(u)/(u J1(u)) + K1'(w)/(w K1(w))), u = ha, w = qa.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "nanoquad/constants.hpp"
#include "nanoquad/errors.hpp"
#include "nanoquad/numerics.hpp"
#include "nanoquad/special_functions.hpp"
#include "nanoquad/types.hpp"

namespace nanoquad {

struct FiberSpec {
    double radius = 0.0;  // m
    double n1 = 1.4615;
    double n2 = 1.0;

    void validate() const {
        if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("fiber radius must be positive");
        if (!(n2 >= 1.0) || !(n1 > n2) || !std::isfinite(n1))
            throw DomainError("refractive indices must satisfy n1 > n2 >= 1");
    }

    double numerical_aperture() const { return std::sqrt(n1 * n1 - n2 * n2); }
};

inline double angular_frequency(double wavelength) {
    if (!(wavelength > 0.0)) throw DomainError("wavelength must be positive");
    return 2.0 * constants::pi * constants::c / wavelength;
}

/// V = k a sqrt(n1^2 - n2^2), k = 2 pi / wavelength.
inline double v_number(const FiberSpec& spec, double wavelength) {
    if (!(wavelength > 0.0)) throw DomainError("wavelength must be positive");
    return 2.0 * constants::pi / wavelength * spec.radius * spec.numerical_aperture();
}

struct SolveOptions {
    /// Keep solving the HE11 branch above the single-mode cutoff.
    bool allow_multimode = false;
    int scan_points = 2000;
};

/// Solved and normalized HE11 mode at one frequency. Immutable once built.
struct ModeSolution {
    FiberSpec fiber;
    double omega = 0.0;   // rad/s
    double k = 0.0;       // omega/c
    double beta = 0.0;    // propagation constant
    double kappa = 0.0;   // outside decay constant
    double h_in = 0.0;    // inside transverse wavenumber
    double v = 0.0;       // V number
    double hybrid_s = 0.0;
    double norm_A = 1.0;  // amplitude fixing the normalization, 1/m
    double profile_sign = 1.0;
    double dispersion_residual = 0.0;

    double wavelength() const { return 2.0 * constants::pi / k; }
};

/// Profile components at one radius. e_r is stored as i*(real), so its real
/// part is exactly zero; e_phi and e_z have zero imaginary parts.
struct ProfileSample {
    double r = 0.0;
    Complex e_r, e_phi, e_z;
    Complex de_r, de_phi, de_z;
};

namespace detail {

/// Continuous HE11 characteristic function F(u; V) = u J1(u) G(u; V) where
///   G = J0(u)/(u J1(u)) + (n1^2+n2^2)/(2 n1^2) K1'(w)/(w K1(w)) - 1/u^2 + R,
///   R = sqrt([(n1^2-n2^2)/(2 n1^2) K1'(w)/(w K1(w))]^2 + (beta/(n1 k))^2 (1/u^2 + 1/w^2)^2),
/// with w = sqrt(V^2 - u^2). Multiplying by u J1(u) removes the poles of G.
inline double dispersion_function(double u, double v, double n1, double n2, double* scale = nullptr) {
    const double w = std::sqrt(v * v - u * u);
    const double na2 = n1 * n1 - n2 * n2;
    const double ka = v / std::sqrt(na2);
    const double j0 = bessel(BesselKind::J, 0, u);
    const double j1 = bessel(BesselKind::J, 1, u);
    const double k1 = bessel(BesselKind::K, 1, w);
    const double k1p = bessel_derivative(BesselKind::K, 1, w);
    const double kp = k1p / (w * k1);
    const double beta_rel2 = 1.0 - (u * u) / (n1 * n1 * ka * ka);
    const double inv = 1.0 / (u * u) + 1.0 / (w * w);
    const double c1 = (n1 * n1 + n2 * n2) / (2.0 * n1 * n1);
    const double c2 = na2 / (2.0 * n1 * n1);
    const double r_term = std::sqrt(c2 * c2 * kp * kp + beta_rel2 * inv * inv);
    const double tail = c1 * kp - 1.0 / (u * u) + r_term;
    if (scale) *scale = std::abs(j0) + std::abs(u * j1) * (std::abs(c1 * kp) + 1.0 / (u * u) + r_term);
    return j0 + u * j1 * tail;
}

struct DispersionRoot {
    double u;
    double residual;
};

/// HE11 root in u = h a for a given V (largest beta, i.e. smallest u).
inline DispersionRoot solve_dispersion(const FiberSpec& spec, double v, const SolveOptions& options) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("V number must be positive");
    if (v >= constants::single_mode_cutoff && !options.allow_multimode)
        throw MultimodeRegime("multimode regime: V = " + std::to_string(v) + " >= 2.405");
    const int n = std::max(options.scan_points, 16);
    const auto f = [&](double u) { return dispersion_function(u, v, spec.n1, spec.n2); };
    const auto grid = numerics::linspace(v * 1e-6, v * (1.0 - 1e-9), static_cast<std::size_t>(n));
    const auto brackets = numerics::scan_sign_changes(f, grid);
    if (brackets.empty())
        throw NoGuidedMode("no HE11 root resolved for V = " + std::to_string(v));
    if (v < constants::single_mode_cutoff && brackets.size() != 1)
        throw NoGuidedMode("expected exactly one HE11 root below cutoff, found " + std::to_string(brackets.size()));
    const auto& b = brackets.front();
    const double u = numerics::find_root(f, b.lo, b.hi, 53);
    double scale = 1.0;
    const double value = dispersion_function(u, v, spec.n1, spec.n2, &scale);
    return {u, std::abs(value) / scale};
}

/// Unnormalized profile (A = 1, no sign fix).
inline ProfileSample raw_profile(const ModeSolution& m, double r) {
    const double a = m.fiber.radius;
    const double s = m.hybrid_s;
    const double beta = m.beta;
    ProfileSample p;
    p.r = r;
    if (r < a) {
        const double h = m.h_in;
        const double x = h * r;
        const double j0 = bessel(BesselKind::J, 0, x), j2 = bessel(BesselKind::J, 2, x);
        const double dj0 = bessel_derivative(BesselKind::J, 0, x), dj1 = bessel_derivative(BesselKind::J, 1, x),
                     dj2 = bessel_derivative(BesselKind::J, 2, x);
        p.e_r = I * (beta / (2.0 * h) * ((1.0 - s) * j0 - (1.0 + s) * j2));
        p.e_phi = -beta / (2.0 * h) * ((1.0 - s) * j0 + (1.0 + s) * j2);
        p.e_z = bessel(BesselKind::J, 1, x);
        p.de_r = I * (beta / 2.0 * ((1.0 - s) * dj0 - (1.0 + s) * dj2));
        p.de_phi = -beta / 2.0 * ((1.0 - s) * dj0 + (1.0 + s) * dj2);
        p.de_z = h * dj1;
    } else {
        const double q = m.kappa;
        const double x = q * r;
        const double ratio = bessel(BesselKind::J, 1, m.h_in * a) / bessel(BesselKind::K, 1, q * a);
        const double k0 = bessel(BesselKind::K, 0, x), k2 = bessel(BesselKind::K, 2, x);
        const double dk0 = bessel_derivative(BesselKind::K, 0, x), dk1 = bessel_derivative(BesselKind::K, 1, x),
                     dk2 = bessel_derivative(BesselKind::K, 2, x);
        p.e_r = I * (beta * ratio / (2.0 * q) * ((1.0 - s) * k0 + (1.0 + s) * k2));
        p.e_phi = -beta * ratio / (2.0 * q) * ((1.0 - s) * k0 - (1.0 + s) * k2);
        p.e_z = ratio * bessel(BesselKind::K, 1, x);
        p.de_r = I * (beta * ratio / 2.0 * ((1.0 - s) * dk0 + (1.0 + s) * dk2));
        p.de_phi = -beta * ratio / 2.0 * ((1.0 - s) * dk0 - (1.0 + s) * dk2);
        p.de_z = ratio * q * dk1;
    }
    return p;
}

inline ProfileSample scaled(ProfileSample p, double factor) {
    p.e_r *= factor;
    p.e_phi *= factor;
    p.e_z *= factor;
    p.de_r *= factor;
    p.de_phi *= factor;
    p.de_z *= factor;
    return p;
}

inline double outer_cutoff(const ModeSolution& m) { return m.fiber.radius + 40.0 / m.kappa; }

/// Integral of f over [a, outer_cutoff] on panels of doubling width. Weakly
/// guided modes have tails far longer than the core radius, which a single
/// adaptive panel does not resolve.
template <class F>
double integrate_outside(const ModeSolution& m, F&& f, double rel_tol = 1e-12) {
    const double a = m.fiber.radius;
    const double end = outer_cutoff(m);
    double total = 0.0;
    double lo = a;
    double width = std::min(a, 1.0 / m.kappa);
    while (lo < end) {
        const double hi = std::min(end, lo + width);
        total += numerics::integrate(f, lo, hi, rel_tol).value;
        lo = hi;
        width *= 2.0;
    }
    return total;
}

}  // namespace detail

/// Profile of the normalized mode at radius r. r == a is evaluated on the
/// outside branch (atom on the fiber surface).
inline ProfileSample mode_profile(const ModeSolution& mode, double r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("mode_profile: r must be positive");
    return detail::scaled(detail::raw_profile(mode, r), mode.norm_A * mode.profile_sign);
}

/// Magnetic profile (h_r, h_phi, h_z) of the circular mode matching mode_profile, in A/m per V.
inline CVec3 magnetic_profile(const ModeSolution& m, double r) {
    if (!(r > 0.0)) throw DomainError("magnetic_profile: r must be positive");
    const double a = m.fiber.radius;
    const double s = m.hybrid_s;
    const double b2s = m.beta * m.beta * s;
    const double z0 = constants::vacuum_impedance;
    const double amp = m.norm_A * m.profile_sign;
    CVec3 h;
    if (r < a) {
        const double hh = m.h_in;
        const double j1 = bessel(BesselKind::J, 1, hh * r);
        const double dj1 = bessel_derivative(BesselKind::J, 1, hh * r);
        const double n = m.fiber.n1;
        h[0] = -(1.0 / (hh * hh * z0)) * (b2s * hh / m.k * dj1 - m.k * n * n / r * j1);
        h[1] = I * (1.0 / (hh * hh * z0)) * (-b2s / (m.k * r) * j1 + m.k * n * n * hh * dj1);
        h[2] = I * (m.beta * s / (m.k * z0)) * j1;
    } else {
        const double q = m.kappa;
        const double ratio = bessel(BesselKind::J, 1, m.h_in * a) / bessel(BesselKind::K, 1, q * a);
        const double k1 = bessel(BesselKind::K, 1, q * r);
        const double dk1 = bessel_derivative(BesselKind::K, 1, q * r);
        const double n = m.fiber.n2;
        h[0] = (ratio / (q * q * z0)) * (b2s * q / m.k * dk1 - m.k * n * n / r * k1);
        h[1] = -I * (ratio / (q * q * z0)) * (-b2s / (m.k * r) * k1 + m.k * n * n * q * dk1);
        h[2] = I * (m.beta * s / (m.k * z0)) * ratio * k1;
    }
    for (auto& c : h) c *= amp;
    return h;
}

/// int_0^{2pi} dphi int_0^inf n_ref^2 |e^{(mu)}|^2 r dr for the current norm_A.
inline double normalization_integral(const ModeSolution& mode) {
    const double a = mode.fiber.radius;
    const auto density = [&](double r, double n) {
        const auto p = mode_profile(mode, r);
        return n * n * (std::norm(p.e_r) + std::norm(p.e_phi) + std::norm(p.e_z)) * r;
    };
    const double inner =
        numerics::integrate([&](double r) { return density(r, mode.fiber.n1); }, 0.0, a).value;
    const double outer = detail::integrate_outside(mode, [&](double r) { return density(std::max(r, a), mode.fiber.n2); });
    return constants::pi * (inner + outer);
}

/// Rescale norm_A so that the normalization integral equals one.
inline ModeSolution normalize(ModeSolution mode) {
    const double integral = normalization_integral(mode);
    if (!(integral > 0.0) || !std::isfinite(integral)) throw QuadratureFailure("normalization integral not positive");
    mode.norm_A /= std::sqrt(integral);
    return mode;
}

/// Guided power of the circular mode built on the normalized profile with unit amplitude.
inline double circular_mode_power(const ModeSolution& mode) {
    const double a = mode.fiber.radius;
    const auto sz = [&](double r) {
        const auto e = mode_profile(mode, r);
        const auto h = magnetic_profile(mode, r);
        return 0.5 * std::real(e.e_r * std::conj(h[1]) - e.e_phi * std::conj(h[0])) * r;
    };
    // Outside the core the two terms of h_phi cancel to O(kappa^2 / beta^2),
    // which sets the roundoff floor of the integrand near cutoff.
    const double floor = 1e-14 * (mode.beta * mode.beta) / (mode.kappa * mode.kappa);
    const double tol = std::max(1e-12, floor);
    const double inner = numerics::integrate(sz, 0.0, a, tol).value;
    const double outer = detail::integrate_outside(mode, [&](double r) { return sz(std::max(r, a)); }, tol);
    return 2.0 * constants::pi * (inner + outer);
}

/// Solve, sign-fix and normalize the HE11 mode at angular frequency omega.
inline ModeSolution solve_he11(const FiberSpec& spec, double omega, const SolveOptions& options = {}) {
    spec.validate();
    if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("omega must be positive");
    ModeSolution m;
    m.fiber = spec;
    m.omega = omega;
    m.k = omega / constants::c;
    m.v = m.k * spec.radius * spec.numerical_aperture();
    const auto root = detail::solve_dispersion(spec, m.v, options);
    const double a = spec.radius;
    const double u = root.u;
    const double w = std::sqrt(m.v * m.v - u * u);
    m.h_in = u / a;
    m.kappa = w / a;
    m.beta = std::sqrt(spec.n1 * spec.n1 * m.k * m.k - m.h_in * m.h_in);
    m.dispersion_residual = root.residual;
    const double j1 = bessel(BesselKind::J, 1, u);
    const double dj1 = bessel_derivative(BesselKind::J, 1, u);
    const double k1 = bessel(BesselKind::K, 1, w);
    const double dk1 = bessel_derivative(BesselKind::K, 1, w);
    m.hybrid_s = (1.0 / (u * u) + 1.0 / (w * w)) / (dj1 / (u * j1) + dk1 / (w * k1));
    m.norm_A = 1.0;
    m.profile_sign = 1.0;
    if (std::real(detail::raw_profile(m, a).e_phi) < 0.0) m.profile_sign = -1.0;
    return normalize(m);
}

inline ModeSolution solve_he11_at_wavelength(const FiberSpec& spec, double wavelength,
                                             const SolveOptions& options = {}) {
    return solve_he11(spec, angular_frequency(wavelength), options);
}

/// Real, nonnegative amplitude A such that the quasilinear mode A e^{(mu)} carries `power` watts.
inline Complex amplitude_for_power(const ModeSolution& mode, double power) {
    if (!(power >= 0.0) || !std::isfinite(power)) throw DomainError("power must be nonnegative");
    if (power == 0.0) return 0.0;
    // Quasilinear = (circular_{+1} + circular_{-1}) / 2, cross terms vanish on the phi integral.
    return std::sqrt(2.0 * power / circular_mode_power(mode));
}

/// dbeta/domega by a Richardson-extrapolated central difference (relative step 1e-6).
inline double beta_derivative(const FiberSpec& spec, double omega, const SolveOptions& options = {},
                              double rel_step = 1e-6) {
    spec.validate();
    const auto beta_at = [&](double w) {
        const double k = w / constants::c;
        const double v = k * spec.radius * spec.numerical_aperture();
        const double u = detail::solve_dispersion(spec, v, options).u / spec.radius;
        return std::sqrt(spec.n1 * spec.n1 * k * k - u * u);
    };
    const auto central = [&](double h) { return (beta_at(omega + h) - beta_at(omega - h)) / (2.0 * h); };
    const double h = rel_step * omega;
    return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

// ---------------------------------------------------------------------------
// Quasilinearly polarized field
// ---------------------------------------------------------------------------

struct FieldConfig {
    Direction direction = Direction::Forward;
    double pol_phi0 = 0.0;    // orientation of the principal polarization axis, rad
    Complex amplitude = 1.0;  // multiplies the normalized profile
    double power = 0.0;       // W; informational once amplitude is set

    static double orientation(Polarization xi) { return xi == Polarization::X ? 0.0 : constants::pi / 2.0; }
};

/// Field configuration carrying `power` watts in the (f, xi) quasilinear mode.
inline FieldConfig field_for_power(const ModeSolution& mode, Direction f, Polarization xi, double power) {
    return {f, FieldConfig::orientation(xi), amplitude_for_power(mode, power), power};
}

/// Unit-amplitude configuration, i.e. the normalized mode function e^{(mu)}.
inline FieldConfig normalized_field(Direction f, Polarization xi) {
    return {f, FieldConfig::orientation(xi), 1.0, 0.0};
}

namespace detail {

struct Angles {
    double c, s;    // cos, sin of (phi - phi0)
    double cp, sp;  // cos, sin of phi
};

inline Angles angles(double phi, double phi0) {
    const auto p = numerics::cos_sin(phi);
    const auto p0 = numerics::cos_sin(phi0);
    return {p.cos * p0.cos + p.sin * p0.sin, p.sin * p0.cos - p.cos * p0.sin, p.cos, p.sin};
}

inline Complex phase_factor(const ModeSolution& mode, const FieldConfig& cfg, double z) {
    return cfg.amplitude * std::polar(1.0, sign(cfg.direction) * mode.beta * z);
}

inline void require_positive_r(double r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("position must have r > 0");
}

}  // namespace detail

/// Cartesian field (E_x, E_y, E_z) of the quasilinear mode at a cylindrical position.
inline CVec3 field_at(const ModeSolution& mode, const FieldConfig& cfg, const CylindricalPoint& pos) {
    detail::require_positive_r(pos.r);
    const auto p = mode_profile(mode, pos.r);
    const auto g = detail::angles(pos.phi, cfg.pol_phi0);
    const Complex ph = detail::phase_factor(mode, cfg, pos.z);
    const Complex ie_phi = I * p.e_phi;
    const double f = sign(cfg.direction);
    return {ph * (p.e_r * (g.c * g.cp) - ie_phi * (g.s * g.sp)),
            ph * (p.e_r * (g.c * g.sp) + ie_phi * (g.s * g.cp)),
            ph * (f * p.e_z * g.c)};
}

/// x-polarized field (phi0 = 0).
inline CVec3 field_x_polarized(const ModeSolution& mode, Direction dir, Complex amplitude, const CylindricalPoint& pos) {
    detail::require_positive_r(pos.r);
    const auto p = mode_profile(mode, pos.r);
    const auto t = numerics::cos_sin(pos.phi);
    const Complex ph = amplitude * std::polar(1.0, sign(dir) * mode.beta * pos.z);
    const Complex ie_phi = I * p.e_phi;
    return {ph * (p.e_r * (t.cos * t.cos) - ie_phi * (t.sin * t.sin)),
            ph * (p.e_r * (t.cos * t.sin) + ie_phi * (t.sin * t.cos)),
            ph * (sign(dir) * p.e_z * t.cos)};
}

/// y-polarized field (phi0 = pi/2).
inline CVec3 field_y_polarized(const ModeSolution& mode, Direction dir, Complex amplitude, const CylindricalPoint& pos) {
    detail::require_positive_r(pos.r);
    const auto p = mode_profile(mode, pos.r);
    const auto t = numerics::cos_sin(pos.phi);
    const Complex ph = amplitude * std::polar(1.0, sign(dir) * mode.beta * pos.z);
    const Complex ie_phi = I * p.e_phi;
    return {ph * (p.e_r * (t.sin * t.cos) - ie_phi * (-t.cos * t.sin)),
            ph * (p.e_r * (t.sin * t.sin) + ie_phi * (-t.cos * t.cos)),
            ph * (sign(dir) * p.e_z * t.sin)};
}

/// Analytic field gradient, entry (i, j) = dE_j/dx_i with i, j in fiber axes {x, y, z}.
inline CMat3 cartesian_gradient(const ModeSolution& mode, const FieldConfig& cfg, const CylindricalPoint& pos) {
    detail::require_positive_r(pos.r);
    const auto p = mode_profile(mode, pos.r);
    const auto g = detail::angles(pos.phi, cfg.pol_phi0);
    const Complex ph = detail::phase_factor(mode, cfg, pos.z);
    const double f = sign(cfg.direction);
    const Complex ie_phi = I * p.e_phi;
    const Complex ide_phi = I * p.de_phi;

    const CVec3 e = {ph * (p.e_r * (g.c * g.cp) - ie_phi * (g.s * g.sp)),
                     ph * (p.e_r * (g.c * g.sp) + ie_phi * (g.s * g.cp)), ph * (f * p.e_z * g.c)};
    const CVec3 d_r = {ph * (p.de_r * (g.c * g.cp) - ide_phi * (g.s * g.sp)),
                       ph * (p.de_r * (g.c * g.sp) + ide_phi * (g.s * g.cp)), ph * (f * p.de_z * g.c)};
    const CVec3 d_phi = {ph * (p.e_r * (-g.s * g.cp - g.c * g.sp) - ie_phi * (g.c * g.sp + g.s * g.cp)),
                         ph * (p.e_r * (g.c * g.cp - g.s * g.sp) + ie_phi * (g.c * g.cp - g.s * g.sp)),
                         ph * (f * p.e_z * (-g.s))};

    CMat3 grad{};
    const Complex dz = I * (f * mode.beta);
    for (int j = 0; j < 3; ++j) {
        grad[0][j] = g.cp * d_r[j] - (g.sp / pos.r) * d_phi[j];
        grad[1][j] = g.sp * d_r[j] + (g.cp / pos.r) * d_phi[j];
        grad[2][j] = dz * e[j];
    }
    return grad;
}

/// Spin angular momentum density (eps0 / 2 omega) Im(E* x E) in cylindrical components (j_r, j_phi, j_z).
inline RVec3 spin_density(const ModeSolution& mode, const FieldConfig& cfg, const CylindricalPoint& pos) {
    detail::require_positive_r(pos.r);
    const auto p = mode_profile(mode, pos.r);
    const auto g = detail::angles(pos.phi, cfg.pol_phi0);
    // The common phase of the amplitude cancels in E* x E.
    const double amp = std::abs(cfg.amplitude);
    const double f = sign(cfg.direction);
    const Complex er = amp * p.e_r * g.c;
    const Complex ephi = amp * I * p.e_phi * g.s;
    const Complex ez = amp * f * p.e_z * g.c;
    const double pref = constants::epsilon0 / (2.0 * mode.omega);
    return {pref * std::imag(std::conj(ephi) * ez - std::conj(ez) * ephi),
            pref * std::imag(std::conj(ez) * er - std::conj(er) * ez),
            pref * std::imag(std::conj(er) * ephi - std::conj(ephi) * er)};
}

}  // namespace nanoquad
