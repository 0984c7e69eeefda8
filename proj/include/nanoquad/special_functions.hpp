#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "nanoquad/errors.hpp"

namespace nanoquad {

// ---------------------------------------------------------------------------
// HalfInt
// ---------------------------------------------------------------------------

/// Angular-momentum quantum number stored as twice its value, so that
/// half-integers (1/2, 3/2, ...) are represented exactly.
class HalfInt {
public:
    constexpr HalfInt() = default;
    constexpr HalfInt(int value) : twice_(2 * value) {}  // NOLINT: implicit from integers is intended

    static constexpr HalfInt from_twice(int twice) {
        HalfInt h;
        h.twice_ = twice;
        return h;
    }

    constexpr int twice() const { return twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }
    constexpr double value() const { return 0.5 * twice_; }

    /// Integer value; only meaningful when is_integer().
    constexpr int as_int() const { return twice_ / 2; }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.twice_ + b.twice_); }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.twice_ - b.twice_); }
    constexpr HalfInt operator-() const { return from_twice(-twice_); }
    friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

    std::string to_string() const {
        if (is_integer()) return std::to_string(as_int());
        return std::to_string(twice_) + "/2";
    }

private:
    int twice_ = 0;
};

/// n/2, e.g. half(5) == 5/2.
constexpr HalfInt half(int n) { return HalfInt::from_twice(n); }

/// True when |m| <= j and j - m is an integer.
constexpr bool valid_projection(HalfInt j, HalfInt m) {
    return j.twice() >= 0 && std::abs(m.twice()) <= j.twice() && (j.twice() - m.twice()) % 2 == 0;
}

/// Triangle condition |a - b| <= c <= a + b with a + b + c integer.
constexpr bool triangle(HalfInt a, HalfInt b, HalfInt c) {
    const int ta = a.twice(), tb = b.twice(), tc = c.twice();
    if (ta < 0 || tb < 0 || tc < 0) return false;
    if ((ta + tb + tc) % 2 != 0) return false;
    return std::abs(ta - tb) <= tc && tc <= ta + tb;
}

// ---------------------------------------------------------------------------
// Bessel functions
// ---------------------------------------------------------------------------

enum class BesselKind { J, Y, I, K };

/// Largest argument accepted by bessel(); K underflows shortly beyond.
inline constexpr double bessel_max_argument = 700.0;
inline constexpr int bessel_max_order = 2;

namespace detail {

inline double bessel_unchecked(BesselKind kind, int order, double x) {
    const double nu = static_cast<double>(order);
    switch (kind) {
        case BesselKind::J: return std::cyl_bessel_j(nu, x);
        case BesselKind::Y: return std::cyl_neumann(nu, x);
        case BesselKind::I: return std::cyl_bessel_i(nu, x);
        case BesselKind::K: return std::cyl_bessel_k(nu, x);
    }
    return 0.0;
}

inline void check_bessel_args(BesselKind kind, int order, double x) {
    if (order < 0 || order > bessel_max_order)
        throw DomainError("bessel: order " + std::to_string(order) + " outside supported range 0..2");
    if (!std::isfinite(x)) throw DomainError("bessel: nonfinite argument");
    const bool singular_at_zero = kind == BesselKind::Y || kind == BesselKind::K;
    if (singular_at_zero ? x <= 0.0 : x < 0.0)
        throw DomainError("bessel: argument " + std::to_string(x) + " outside domain");
    if (x > bessel_max_argument) throw DomainError("bessel: argument beyond supported range");
}

}  // namespace detail

/// Cylinder functions J_n, Y_n, I_n, K_n for n in {0, 1, 2}.
inline double bessel(BesselKind kind, int order, double x) {
    detail::check_bessel_args(kind, order, x);
    return detail::bessel_unchecked(kind, order, x);
}

/// d/dx of bessel(kind, order, x), from the standard three-term recurrences.
inline double bessel_derivative(BesselKind kind, int order, double x) {
    detail::check_bessel_args(kind, order, x);
    using detail::bessel_unchecked;
    const auto z = [&](int n) { return bessel_unchecked(kind, n, x); };
    switch (kind) {
        case BesselKind::J:
        case BesselKind::Y:
            return order == 0 ? -z(1) : 0.5 * (z(order - 1) - z(order + 1));
        case BesselKind::I:
            return order == 0 ? z(1) : 0.5 * (z(order - 1) + z(order + 1));
        case BesselKind::K:
            return order == 0 ? -z(1) : -0.5 * (z(order - 1) + z(order + 1));
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Wigner symbols
// ---------------------------------------------------------------------------
//
// Racah sums are accumulated as exact rationals and the square root is taken
// once at the end, so the result carries a single rounding.

namespace detail {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline constexpr int max_factorial = 200;

inline const BigInt& factorial(int n) {
    static const std::vector<BigInt> table = [] {
        std::vector<BigInt> t(max_factorial + 1);
        t[0] = 1;
        for (int i = 1; i <= max_factorial; ++i) t[i] = t[i - 1] * i;
        return t;
    }();
    if (n < 0 || n > max_factorial) throw DomainError("factorial argument out of range");
    return table[static_cast<std::size_t>(n)];
}

/// Triangle coefficient (a+b-c)!(a-b+c)!(-a+b+c)!/(a+b+c+1)! for twice-valued inputs.
inline BigRational triangle_coefficient(int ta, int tb, int tc) {
    BigRational num = BigRational(factorial((ta + tb - tc) / 2) * factorial((ta - tb + tc) / 2) *
                                  factorial((-ta + tb + tc) / 2));
    return num / BigRational(factorial((ta + tb + tc) / 2 + 1));
}

/// sign * sqrt(square) as a correctly scaled double.
inline double signed_sqrt(int sign, const BigRational& square) {
    if (square == 0) return 0.0;
    const double value = std::sqrt(square.convert_to<double>());
    return sign < 0 ? -value : value;
}

}  // namespace detail

/// Wigner 3j symbol (j1 j2 j3; m1 m2 m3). Returns 0 for any combination that
/// violates the triangle, projection or m-sum conditions.
inline double wigner_3j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt m1, HalfInt m2, HalfInt m3) {
    using detail::BigRational;
    using detail::factorial;
    if (!valid_projection(j1, m1) || !valid_projection(j2, m2) || !valid_projection(j3, m3)) return 0.0;
    if ((m1 + m2 + m3).twice() != 0) return 0.0;
    if (!triangle(j1, j2, j3)) return 0.0;

    // All combinations below are integers once the checks above pass.
    const int a1 = (j1 + m1).as_int(), b1 = (j1 - m1).as_int();
    const int a2 = (j2 + m2).as_int(), b2 = (j2 - m2).as_int();
    const int a3 = (j3 + m3).as_int(), b3 = (j3 - m3).as_int();
    const int k1 = (j3 - j2 + m1).as_int();  // t + k1 >= 0
    const int k2 = (j3 - j1 - m2).as_int();  // t + k2 >= 0
    const int n1 = (j1 + j2 - j3).as_int();  // n1 - t >= 0
    const int n2 = b1;                       // j1 - m1 - t >= 0
    const int n3 = a2;                       // j2 + m2 - t >= 0

    const int t_min = std::max({0, -k1, -k2});
    const int t_max = std::min({n1, n2, n3});
    BigRational sum = 0;
    for (int t = t_min; t <= t_max; ++t) {
        const auto denom = factorial(t) * factorial(t + k1) * factorial(t + k2) * factorial(n1 - t) *
                           factorial(n2 - t) * factorial(n3 - t);
        BigRational term(1, denom);
        if (t % 2 != 0) term = -term;
        sum += term;
    }
    if (sum == 0) return 0.0;

    const BigRational square = detail::triangle_coefficient(j1.twice(), j2.twice(), j3.twice()) *
                               BigRational(factorial(a1) * factorial(b1) * factorial(a2) * factorial(b2) *
                                           factorial(a3) * factorial(b3)) *
                               sum * sum;
    const int phase_exponent = (j1 - j2 - m3).as_int();
    int sign = (phase_exponent % 2 == 0) ? 1 : -1;
    if (sum < 0) sign = -sign;
    return detail::signed_sqrt(sign, square);
}

/// Wigner 6j symbol {j1 j2 j3; j4 j5 j6}; 0 when any of the four triads fails.
inline double wigner_6j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4, HalfInt j5, HalfInt j6) {
    using detail::BigRational;
    using detail::factorial;
    if (!triangle(j1, j2, j3) || !triangle(j1, j5, j6) || !triangle(j4, j2, j6) || !triangle(j4, j5, j3))
        return 0.0;

    const int alpha[4] = {(j1 + j2 + j3).as_int(), (j1 + j5 + j6).as_int(), (j4 + j2 + j6).as_int(),
                          (j4 + j5 + j3).as_int()};
    const int beta[3] = {(j1 + j2 + j4 + j5).as_int(), (j2 + j3 + j5 + j6).as_int(),
                         (j3 + j1 + j6 + j4).as_int()};
    const int t_min = *std::max_element(std::begin(alpha), std::end(alpha));
    const int t_max = *std::min_element(std::begin(beta), std::end(beta));

    BigRational sum = 0;
    for (int t = t_min; t <= t_max; ++t) {
        auto denom = factorial(t - alpha[0]) * factorial(t - alpha[1]) * factorial(t - alpha[2]) *
                     factorial(t - alpha[3]) * factorial(beta[0] - t) * factorial(beta[1] - t) *
                     factorial(beta[2] - t);
        BigRational term(factorial(t + 1), denom);
        if (t % 2 != 0) term = -term;
        sum += term;
    }
    if (sum == 0) return 0.0;

    const BigRational square = detail::triangle_coefficient(j1.twice(), j2.twice(), j3.twice()) *
                               detail::triangle_coefficient(j1.twice(), j5.twice(), j6.twice()) *
                               detail::triangle_coefficient(j4.twice(), j2.twice(), j6.twice()) *
                               detail::triangle_coefficient(j4.twice(), j5.twice(), j3.twice()) * sum * sum;
    return detail::signed_sqrt(sum < 0 ? -1 : 1, square);
}

}  // namespace nanoquad
