#pragma once

// Special functions and adaptive quadrature shared by the physics modules.
//
// erfcx(x) = exp(x^2) erfc(x) is evaluated without forming either factor at
// large x, so it stays finite for any finite argument. integrate_adaptive is a
// global adaptive Gauss-Kronrod (7/15) bisection scheme in the style of
// QUADPACK's QAG; integrands with a cusp must be split at the cusp by the
// caller.

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "rydpol/constants.hpp"
#include "rydpol/errors.hpp"

namespace rydpol {

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    long evaluations = 0;

    QuadratureResult& operator+=(const QuadratureResult& other) {
        value += other.value;
        abs_error_estimate += other.abs_error_estimate;
        evaluations += other.evaluations;
        return *this;
    }
};

inline QuadratureResult operator+(QuadratureResult a, const QuadratureResult& b) { return a += b; }

struct QuadratureOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    long max_evaluations = 1'000'000;
};

namespace detail {

// Maclaurin series of erf, used where erfc(x) >= 0.47 so 1 - erf loses nothing.
inline double erf_series(double x) {
    const double x2 = x * x;
    double term = x;
    double sum = x;
    for (int n = 1; n < 60; ++n) {
        term *= -x2 / n;
        const double contrib = term / (2 * n + 1);
        sum += contrib;
        if (std::abs(contrib) < 1e-17 * std::abs(sum)) break;
    }
    return 2.0 / constants::sqrt_pi * sum;
}

// Laplace continued fraction
//   sqrt(pi) erfcx(x) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
// evaluated with the modified Lentz method.
inline double erfcx_continued_fraction(double x) {
    constexpr double tiny = 1e-300;
    double f = x;
    double c = f;
    double d = 0.0;
    for (int k = 1; k < 500; ++k) {
        const double a = 0.5 * k;
        d = x + a * d;
        if (d == 0.0) d = tiny;
        c = x + a / c;
        if (c == 0.0) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return 1.0 / (constants::sqrt_pi * f);
}

} // namespace detail

/// Scaled complementary error function exp(x^2) erfc(x) for x >= 0.
inline double erfcx(double x) {
    if (!std::isfinite(x)) throw DomainError("erfcx: argument must be finite");
    if (x < 0.0) throw DomainError("erfcx: argument must be non-negative");

    if (x < 0.5) return std::exp(x * x) * (1.0 - detail::erf_series(x));
    if (x < 5.0) return std::exp(x * x) * std::erfc(x);
    if (x < 1e8) return detail::erfcx_continued_fraction(x);
    // 1/(2x^2) is below one ulp here.
    return 1.0 / (x * constants::sqrt_pi);
}

namespace detail {

// Kronrod 15-point abscissae (positive half) and weights; the odd entries are
// the 7-point Gauss abscissae.
inline constexpr std::array<double, 8> kronrod_x = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
inline constexpr std::array<double, 8> kronrod_w = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
inline constexpr std::array<double, 4> gauss_w = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Panel {
    double a;
    double b;
    double value;
    double error;

    bool operator<(const Panel& other) const { return error < other.error; }
};

template <typename F>
Panel gauss_kronrod_15(F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    if (!std::isfinite(fc)) throw DomainError("integrate_adaptive: integrand is not finite");
    double kronrod = fc * kronrod_w[7];
    double gauss = fc * gauss_w[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kronrod_x[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        if (!std::isfinite(f1) || !std::isfinite(f2))
            throw DomainError("integrate_adaptive: integrand is not finite");
        kronrod += kronrod_w[j] * (f1 + f2);
        if (j % 2 == 1) gauss += gauss_w[j / 2] * (f1 + f2);
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

} // namespace detail

/// Integrates f over [a, b] to max(abs_tol, rel_tol |value|).
///
/// Throws ConvergenceError (carrying the best estimate) when the evaluation
/// budget runs out or the panels shrink to machine resolution first.
template <typename F>
    requires std::invocable<F&, double>
QuadratureResult integrate_adaptive(F f, double a, double b, const QuadratureOptions& opts = {}) {
    if (!(std::isfinite(a) && std::isfinite(b)) || !(a < b))
        throw DomainError("integrate_adaptive: need finite a < b");
    if (!(opts.rel_tol > 0.0) || !(opts.abs_tol > 0.0))
        throw DomainError("integrate_adaptive: tolerances must be positive");

    constexpr long evals_per_panel = 15;
    std::priority_queue<detail::Panel> panels;
    const detail::Panel first = detail::gauss_kronrod_15(f, a, b);
    panels.push(first);
    long evaluations = evals_per_panel;
    double total = first.value;
    double error = first.error;

    auto converged = [&] { return error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };

    while (!converged()) {
        if (evaluations + 2 * evals_per_panel > opts.max_evaluations) {
            throw ConvergenceError("integrate_adaptive: evaluation budget exhausted before tolerance "
                                   "was reached",
                                   total, error);
        }
        const detail::Panel worst = panels.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) {
            throw ConvergenceError("integrate_adaptive: panel width reached machine resolution",
                                   total, error);
        }
        panels.pop();
        const detail::Panel left = detail::gauss_kronrod_15(f, worst.a, mid);
        const detail::Panel right = detail::gauss_kronrod_15(f, mid, worst.b);
        evaluations += 2 * evals_per_panel;
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
    }

    // Re-sum from the panels so the running updates leave no drift.
    double value = 0.0;
    double err = 0.0;
    while (!panels.empty()) {
        value += panels.top().value;
        err += panels.top().error;
        panels.pop();
    }
    return {value, err, evaluations};
}

/// Integrates f over [a, +inf) through the map x = a + t/(1 - t).
template <typename F>
    requires std::invocable<F&, double>
QuadratureResult integrate_to_infinity(F f, double a, const QuadratureOptions& opts = {}) {
    if (!std::isfinite(a)) throw DomainError("integrate_to_infinity: lower limit must be finite");
    auto mapped = [&f, a](double t) {
        const double s = 1.0 - t;
        const double x = a + t / s;
        if (!std::isfinite(x)) return 0.0;
        const double jac = 1.0 / (s * s);
        const double fx = f(x);
        if (fx == 0.0) return 0.0;
        return fx * jac;
    };
    return integrate_adaptive(mapped, 0.0, 1.0, opts);
}

} // namespace rydpol
