#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "nanoquad/errors.hpp"

namespace nanoquad::numerics {

/// cos and sin of an angle. Angles within rounding of a multiple of pi/2 give
/// exact 0/+-1, so symmetry-forced zeros of the field stay exactly zero.
struct CosSin {
    double cos;
    double sin;
};

inline CosSin cos_sin(double angle) {
    constexpr double quarter = std::numbers::pi / 2;
    const double turns = std::round(angle / quarter);
    if (std::abs(angle - turns * quarter) <= 1e-14 * std::max(1.0, std::abs(angle))) {
        switch (((static_cast<long long>(turns) % 4) + 4) % 4) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    return {std::cos(angle), std::sin(angle)};
}

struct Bracket {
    double lo;
    double hi;
};

/// All sign changes of f on a monotone grid, as adjacent-point brackets.
template <class F>
std::vector<Bracket> scan_sign_changes(F&& f, const std::vector<double>& grid) {
    std::vector<Bracket> out;
    if (grid.size() < 2) return out;
    double x_prev = grid.front();
    double f_prev = f(x_prev);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double x = grid[i];
        const double fx = f(x);
        if (std::isfinite(f_prev) && std::isfinite(fx) && ((f_prev < 0) != (fx < 0) || fx == 0.0))
            out.push_back({x_prev, x});
        x_prev = x;
        f_prev = fx;
    }
    return out;
}

/// Root of f in [lo, hi] (TOMS 748). `bits` is the requested relative precision
/// in binary digits.
template <class F>
double find_root(F&& f, double lo, double hi, int bits = 50) {
    const double f_lo = f(lo);
    const double f_hi = f(hi);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo < 0) == (f_hi < 0) || !std::isfinite(f_lo) || !std::isfinite(f_hi))
        throw NoSignChange("no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    std::uintmax_t max_iter = 200;
    const auto r = boost::math::tools::toms748_solve(
        f, lo, hi, f_lo, f_hi, boost::math::tools::eps_tolerance<double>(bits), max_iter);
    return 0.5 * (r.first + r.second);
}

struct Extremum {
    double location;
    double value;
};

/// Maximum of f on [lo, hi] by Brent's parabolic/golden-section search. Throws
/// NoInteriorExtremum when the maximum sits on the bracket boundary.
template <class F>
Extremum find_maximum(F&& f, double lo, double hi, double rel_tol = 1e-4) {
    if (!(hi > lo)) throw DomainError("find_maximum: empty bracket");
    // Brent's minimizer resolves roughly half the mantissa bits at best.
    const int bits = std::min(std::numeric_limits<double>::digits / 2,
                              std::max(8, static_cast<int>(std::ceil(-std::log2(rel_tol))) + 4));
    std::uintmax_t max_iter = 500;
    const auto r = boost::math::tools::brent_find_minima([&](double x) { return -f(x); }, lo, hi, bits, max_iter);
    const double edge = rel_tol * (hi - lo);
    if (r.first - lo <= edge || hi - r.first <= edge)
        throw NoInteriorExtremum("maximum lies on the bracket boundary");
    return {r.first, -r.second};
}

struct Integral {
    double value;
    double error_estimate;
};

/// Adaptive Gauss-Kronrod (15-point pairs) integration of f over [lo, hi].
/// Fails with QuadratureFailure when the error estimate exceeds `rel_tol`
/// times the L1 norm of the integrand.
///
/// The integrand is mapped onto [0, 1] and divided by a sampled magnitude
/// first: the Boost stopping rule misbehaves for integrals far from unity.
template <class F>
Integral integrate(F&& f, double lo, double hi, double rel_tol = 1e-12, unsigned max_depth = 20) {
    const double width = hi - lo;
    if (width == 0.0) return {0.0, 0.0};
    double scale = 0.0;
    for (int i = 0; i < 16; ++i) scale = std::max(scale, std::abs(f(lo + width * ((i + 0.5) / 16.0))));
    if (!std::isfinite(scale)) throw QuadratureFailure("integrand not finite");
    if (scale == 0.0) scale = 1.0;
    const auto g = [&](double t) { return f(lo + width * t) / scale; };
    double error = 0.0;
    double l1 = 0.0;
    const double value =
        boost::math::quadrature::gauss_kronrod<double, 15>::integrate(g, 0.0, 1.0, max_depth, rel_tol, &error, &l1);
    if (!std::isfinite(value) || error > 10.0 * rel_tol * std::max(l1, std::numeric_limits<double>::min()))
        throw QuadratureFailure("adaptive quadrature did not converge");
    const double factor = width * scale;
    return {value * factor, error * std::abs(factor)};
}

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> out;
    if (n == 0) return out;
    if (n == 1) return {lo};
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    out.back() = hi;
    return out;
}

inline std::vector<double> logspace(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(hi > 0.0)) throw DomainError("logspace: bounds must be positive");
    std::vector<double> out = linspace(std::log(lo), std::log(hi), n);
    for (double& x : out) x = std::exp(x);
    if (!out.empty()) {
        out.front() = lo;
        out.back() = hi;
    }
    return out;
}

}  // namespace nanoquad::numerics
