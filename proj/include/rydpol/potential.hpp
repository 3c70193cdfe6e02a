#pragma once

// Dipole-dipole shift between two Rydberg excitations, in 3D and averaged over
// the Gaussian transverse profile of the quantum fields.
//
// With zeta = s/w the averaged potential is (2C/w^3) g(zeta),
//   g(zeta) = 2|zeta| - sqrt(pi) (1 + 2 zeta^2) erfcx(|zeta|),
// where w is the width in the intensity profile exp(-r^2/w^2).

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "rydpol/constants.hpp"
#include "rydpol/errors.hpp"
#include "rydpol/numerics.hpp"

namespace rydpol {

struct Geometry {
    double w = 0.0; // m
    double L = 0.0; // m
};

/// 3D shift C (1 - 3 cos^2 theta) / r^3 for a pair at distance r whose axis
/// makes angle theta with the quantization (propagation) axis.
inline double dd_shift_3d(double separation, double theta, double C) {
    if (separation == 0.0) throw SingularityError("dd_shift_3d: zero separation");
    if (!(separation > 0.0) || !std::isfinite(separation))
        throw DomainError("dd_shift_3d: separation must be positive and finite");
    const double c = std::cos(theta);
    return C * (1.0 - 3.0 * c * c) / (separation * separation * separation);
}

namespace detail {

// Above this |zeta| the two terms of g cancel to more than 3 digits, so the
// asymptotic series is used instead:
//   g ~ sum_{m>=2} (2m-2) a_{m-1} zeta^{1-2m},  a_k = (-1)^k (2k-1)!! / 2^k
//     = -zeta^-3 + 3 zeta^-5 - 45/4 zeta^-7 + ...
inline constexpr double reduced_asymptotic_threshold = 6.0;

inline double reduced_potential_asymptotic(double a) {
    const double inv2 = 1.0 / (a * a);
    double coeff = -0.5; // a_1
    double power = inv2 / a; // a^-3
    double sum = 0.0;
    double previous = std::numeric_limits<double>::infinity();
    for (int m = 2; m < 200; ++m) {
        const double term = (2.0 * m - 2.0) * coeff * power;
        if (std::abs(term) >= previous) break;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
        previous = std::abs(term);
        coeff *= -(2.0 * m - 1.0) / 2.0; // a_{m-1} -> a_m
        power *= inv2;
    }
    return sum;
}

} // namespace detail

/// Dimensionless 1D potential g(zeta); the physical shift is (2C/w^3) g.
inline double reduced_potential(double zeta) {
    if (!std::isfinite(zeta)) throw DomainError("reduced_potential: argument must be finite");
    const double a = std::abs(zeta);
    if (a >= detail::reduced_asymptotic_threshold) return detail::reduced_potential_asymptotic(a);
    return 2.0 * a - constants::sqrt_pi * (1.0 + 2.0 * a * a) * erfcx(a);
}

/// Transverse-averaged shift for longitudinal separation s = z - z' [rad/s].
inline double dd_potential_1d(double s, double C, double w) {
    if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("dd_potential_1d: w must be positive");
    if (!std::isfinite(s) || !std::isfinite(C)) throw DomainError("dd_potential_1d: non-finite input");
    return 2.0 * C / (w * w * w) * reduced_potential(s / w);
}

/// Integral of g over [-zeta_max, zeta_max], split at the cusp. The default
/// (infinite) range gives the full-line value, -2.
inline QuadratureResult reduced_potential_integral(
    double zeta_max = std::numeric_limits<double>::infinity(),
    const QuadratureOptions& opts = {}) {
    if (!(zeta_max > 0.0)) throw DomainError("reduced_potential_integral: zeta_max must be positive");
    // Half-range tolerances so the sum meets opts.
    QuadratureOptions half = opts;
    half.abs_tol = 0.5 * opts.abs_tol;
    if (std::isinf(zeta_max)) {
        auto right = integrate_to_infinity([](double z) { return reduced_potential(z); }, 0.0, half);
        auto left = integrate_to_infinity([](double z) { return reduced_potential(-z); }, 0.0, half);
        return left + right;
    }
    auto left = integrate_adaptive([](double z) { return reduced_potential(z); }, -zeta_max, 0.0, half);
    auto right = integrate_adaptive([](double z) { return reduced_potential(z); }, 0.0, zeta_max, half);
    return left + right;
}

/// Samples of g(zeta) on a uniform grid, for plotting.
inline std::vector<std::pair<double, double>> reduced_potential_curve(double zeta_min, double zeta_max,
                                                                      int points) {
    if (points < 2 || !(zeta_min < zeta_max))
        throw DomainError("reduced_potential_curve: need at least 2 points on a non-empty range");
    std::vector<std::pair<double, double>> curve;
    curve.reserve(points);
    const double step = (zeta_max - zeta_min) / (points - 1);
    for (int i = 0; i < points; ++i) {
        const double zeta = zeta_min + i * step;
        curve.emplace_back(zeta, reduced_potential(zeta));
    }
    return curve;
}

} // namespace rydpol
