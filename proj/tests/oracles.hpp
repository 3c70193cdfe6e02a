#pragma once

// Reference computations for the tests. None of these go through the
// library's quadrature or special-function code paths.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "rydpol/collision.hpp"
#include "rydpol/potential.hpp"

namespace oracle {

using Float50 = boost::multiprecision::cpp_bin_float_50;

/// exp(x^2) erfc(x) in 50-digit arithmetic.
inline double erfcx(double x) {
    const Float50 xx(x);
    const Float50 value = boost::multiprecision::exp(xx * xx) * boost::math::erfc(xx);
    return value.convert_to<double>();
}

/// Composite Simpson on [a, b], doubling the panel count until two successive
/// results agree to tol.
inline double simpson_halving(const std::function<double(double)>& f, double a, double b, double tol) {
    auto simpson = [&](int n) {
        const double h = (b - a) / n;
        double sum = f(a) + f(b);
        for (int i = 1; i < n; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
        return sum * h / 3.0;
    };
    int n = 64;
    double previous = simpson(n);
    for (int k = 0; k < 20; ++k) {
        n *= 2;
        const double current = simpson(n);
        if (std::abs(current - previous) < tol) return current;
        previous = current;
    }
    return previous;
}

/// Average of the 3D shift over a Gaussian transverse intensity profile,
///   (1/(pi w^2)) int dphi int r dr exp(-r^2/w^2) Delta_3D(z e_z - r'),
/// done as a nested 2D Gauss-Kronrod integral.
inline double transverse_average(double z, double C, double w) {
    using boost::math::quadrature::gauss_kronrod;
    const double az = std::abs(z);
    auto radial = [&](double) {
        auto integrand = [&](double r) {
            const double separation = std::hypot(z, r);
            const double theta = std::atan2(r, z);
            return r * std::exp(-r * r / (w * w)) * rydpol::dd_shift_3d(separation, theta, C);
        };
        // split at r = |z| and at the sign change r = sqrt(2)|z|
        const double r1 = az;
        const double r2 = std::numbers::sqrt2 * az;
        // exp(-r^2/w^2) < 1e-62 beyond r2 + 12 w
        const double r3 = r2 + 12.0 * w;
        constexpr unsigned depth = 12;
        constexpr double tol = 1e-10;
        double total = 0.0;
        total += gauss_kronrod<double, 61>::integrate(integrand, 0.0, r1, depth, tol);
        total += gauss_kronrod<double, 61>::integrate(integrand, r1, r2, depth, tol);
        total += gauss_kronrod<double, 61>::integrate(integrand, r2, r2 + w, depth, tol);
        total += gauss_kronrod<double, 61>::integrate(integrand, r2 + w, r3, depth, tol);
        return total;
    };
    // The shift depends on the azimuth only through cos(theta), which it does
    // not enter, so a short fixed Gauss rule is exact in phi'.
    const double angular = boost::math::quadrature::gauss<double, 4>::integrate(radial, 0.0, 2.0 * std::numbers::pi);
    return angular / (std::numbers::pi * w * w);
}

/// Schmidt number from K = ||A||_F^4 / ||A^H A||_F^2, with no decomposition.
inline double schmidt_number_frobenius(const rydpol::TwoParticleGrid& grid) {
    const std::size_t n1 = grid.z1.size();
    const std::size_t n2 = grid.z2.size();
    double frob2 = 0.0;
    for (const auto& a : grid.amplitude) frob2 += std::norm(a);
    double gram2 = 0.0;
    for (std::size_t j = 0; j < n2; ++j) {
        for (std::size_t k = 0; k < n2; ++k) {
            std::complex<double> entry{0.0, 0.0};
            for (std::size_t i = 0; i < n1; ++i) entry += std::conj(grid.at(i, j)) * grid.at(i, k);
            gram2 += std::norm(entry);
        }
    }
    return frob2 * frob2 / gram2;
}

} // namespace oracle
