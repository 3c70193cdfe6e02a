#pragma once

// Collision of two counter-propagating single-excitation polaritons.
//
// Envelopes translate rigidly at +-v; the two-particle amplitude picks up the
// conditional phase
//   phi(z1, z2, t) = -sin^4(theta) int_0^t dt' Delta(z1 - z2 - 2 v (t - t')).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "rydpol/constants.hpp"
#include "rydpol/eit.hpp"
#include "rydpol/errors.hpp"
#include "rydpol/numerics.hpp"
#include "rydpol/potential.hpp"

namespace rydpol {

// Gaussian wavepacket with |f|^2 of rms width sigma_z, normalized so that
// int |f|^2 dz = norm_length (the medium length L for polariton fields).
struct PulseEnvelope {
    double center_z0 = 0.0;
    double sigma_z = 0.0;
    double norm_length = 1.0;

    double amplitude(double z) const {
        const double x = (z - center_z0) / sigma_z;
        return std::sqrt(norm_length / (sigma_z * std::sqrt(2.0 * constants::pi))) * std::exp(-0.25 * x * x);
    }

    double intensity(double z) const {
        const double a = amplitude(z);
        return a * a;
    }

    /// Fraction of int |f|^2 lying in [a, b].
    double mass_fraction(double a, double b) const {
        const double s = sigma_z * std::numbers::sqrt2;
        return 0.5 * (std::erf((b - center_z0) / s) - std::erf((a - center_z0) / s));
    }

    PulseEnvelope shifted(double dz) const { return {center_z0 + dz, sigma_z, norm_length}; }
};

struct TwoParticleGrid {
    std::vector<double> z1;
    std::vector<double> z2;
    std::vector<std::complex<double>> amplitude; // row-major, z1 index outer
    double time = 0.0;

    std::complex<double>& at(std::size_t i, std::size_t j) { return amplitude[i * z2.size() + j]; }
    const std::complex<double>& at(std::size_t i, std::size_t j) const { return amplitude[i * z2.size() + j]; }
};

struct PhaseResult {
    double phi_closed = 0.0;
    double phi_quadrature = 0.0;
    double rel_difference = 0.0;
};

inline constexpr double truncation_tolerance = 1e-6;

/// Conditional phase at (z1, z2) after time t. The time integral is done in
/// the reduced separation u = (z1 - z2 - 2v(t - t'))/w, which moves the cusp
/// of the potential to u = 0, where the range is split.
inline double phase_shift(double z1, double z2, double t, const DerivedEit& der, double C, double w,
                          const QuadratureOptions& opts = {}) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("phase_shift: time must be non-negative");
    if (t == 0.0 || C == 0.0) return 0.0;

    const double upper = (z1 - z2) / w;
    const double lower = (z1 - z2 - 2.0 * der.v * t) / w;
    auto g = [](double u) { return reduced_potential(u); };

    QuadratureResult integral;
    if (lower < 0.0 && upper > 0.0) {
        integral = integrate_adaptive(g, lower, 0.0, opts) + integrate_adaptive(g, 0.0, upper, opts);
    } else if (lower < upper) {
        integral = integrate_adaptive(g, lower, upper, opts);
    }
    // dt' = w du / (2v), Delta = (2C/w^3) g
    return -der.sin4_theta() * C / (der.v * w * w) * integral.value;
}

/// Long-medium limit of phi(L, 0, L/v): 2 C sin^4(theta) / (v w^2).
inline double closed_form_phase(const DerivedEit& der, double C, double w) {
    return 2.0 * C * der.sin4_theta() / (der.v * w * w);
}

/// Largest phase compatible with |Delta(0)| < delta_omega: (w/2) sqrt(kappa0/(pi L)).
inline double phase_bound(const DerivedEit& der, const MediumConfig& cfg) {
    return 0.5 * cfg.w * std::sqrt(der.kappa0 / (constants::pi * cfg.L));
}

inline PhaseResult compare_phase(const MediumConfig& cfg, const DerivedEit& der, const QuadratureOptions& opts = {}) {
    const double C = cfg.rydberg.interaction_constant;
    PhaseResult r;
    r.phi_closed = closed_form_phase(der, C, cfg.w);
    r.phi_quadrature = phase_shift(cfg.L, 0.0, der.t_out, der, C, cfg.w, opts);
    r.rel_difference = std::abs(r.phi_closed - r.phi_quadrature) /
                       std::max(std::abs(r.phi_closed), std::numeric_limits<double>::min());
    return r;
}

/// phi(vt, L - vt, t) sampled at tau = vt/w in [0, L/w], in units of 2C/(v w^2).
inline std::vector<std::pair<double, double>> crossing_phase_curve(const MediumConfig& cfg, const DerivedEit& der,
                                                                   int points) {
    if (points < 2) throw DomainError("crossing_phase_curve: need at least 2 points");
    const double C = cfg.rydberg.interaction_constant;
    const double unit = 2.0 * C / (der.v * cfg.w * cfg.w);
    const double tau_max = cfg.L / cfg.w;
    std::vector<std::pair<double, double>> curve;
    curve.reserve(points);
    for (int i = 0; i < points; ++i) {
        const double tau = tau_max * i / (points - 1);
        const double t = tau * cfg.w / der.v;
        const double z1 = der.v * t;
        const double phi = phase_shift(z1, cfg.L - z1, t, der, C, cfg.w);
        curve.emplace_back(tau, unit > 0.0 ? phi / unit : 0.0);
    }
    return curve;
}

/// Gaussian envelopes at z = 0 and z = L whose intensity FWHM equals v T.
inline std::pair<PulseEnvelope, PulseEnvelope> default_envelopes(const MediumConfig& cfg, const DerivedEit& der) {
    const double sigma = der.v * cfg.T / (2.0 * std::sqrt(2.0 * std::numbers::ln2));
    return {PulseEnvelope{0.0, sigma, cfg.L}, PulseEnvelope{cfg.L, sigma, cfg.L}};
}

inline constexpr int default_grid_points = 512;
inline constexpr double default_grid_padding_sigmas = 6.0;

/// Uniform grid over [-pad, L + pad], pad = 6 sigma of the wider envelope, so
/// both envelopes stay on the grid from t = 0 through t_out.
inline std::vector<double> default_grid(const MediumConfig& cfg, const PulseEnvelope& env1,
                                        const PulseEnvelope& env2, int points = default_grid_points) {
    if (points < 2) throw DomainError("default_grid: need at least 2 points");
    const double pad = default_grid_padding_sigmas * std::max(env1.sigma_z, env2.sigma_z);
    const double lo = -pad;
    const double hi = cfg.L + pad;
    std::vector<double> z(points);
    for (int i = 0; i < points; ++i) z[i] = lo + (hi - lo) * i / (points - 1);
    return z;
}

namespace detail {

inline double uniform_spacing(std::span<const double> z, const char* name) {
    if (z.size() < 2) throw DomainError(std::string(name) + " grid needs at least 2 points");
    const double h = (z.back() - z.front()) / static_cast<double>(z.size() - 1);
    if (!(h > 0.0)) throw DomainError(std::string(name) + " grid must be strictly increasing");
    for (std::size_t i = 1; i < z.size(); ++i) {
        const double step = z[i] - z[i - 1];
        if (!(step > 0.0) || std::abs(step - h) > 1e-9 * h)
            throw DomainError(std::string(name) + " grid must be uniform and strictly increasing");
    }
    return h;
}

inline void check_mass(const PulseEnvelope& env, std::span<const double> z, const char* name) {
    const double lost = 1.0 - env.mass_fraction(z.front(), z.back());
    if (lost > truncation_tolerance) {
        throw TruncationError(std::string(name) + " loses a fraction " + std::to_string(lost) +
                              " of its mass outside the grid [" + std::to_string(z.front()) + ", " +
                              std::to_string(z.back()) + "] m");
    }
}

} // namespace detail

/// Two-particle amplitude F12(z1, z2, t) = f1(z1 - vt) f2(z2 + vt) exp(i phi).
inline TwoParticleGrid evolve_two_particle(const PulseEnvelope& env1, const PulseEnvelope& env2, double t,
                                           std::span<const double> z1, std::span<const double> z2,
                                           const DerivedEit& der, double C, double w) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("evolve_two_particle: time must be non-negative");
    const double h1 = detail::uniform_spacing(z1, "z1");
    const double h2 = detail::uniform_spacing(z2, "z2");

    const PulseEnvelope moved1 = env1.shifted(der.v * t);
    const PulseEnvelope moved2 = env2.shifted(-der.v * t);
    detail::check_mass(moved1, z1, "envelope 1");
    detail::check_mass(moved2, z2, "envelope 2");

    const std::size_t n1 = z1.size();
    const std::size_t n2 = z2.size();
    TwoParticleGrid grid;
    grid.z1.assign(z1.begin(), z1.end());
    grid.z2.assign(z2.begin(), z2.end());
    grid.time = t;
    grid.amplitude.resize(n1 * n2);

    std::vector<double> f1(n1), f2(n2);
    for (std::size_t i = 0; i < n1; ++i) f1[i] = moved1.amplitude(z1[i]);
    for (std::size_t j = 0; j < n2; ++j) f2[j] = moved2.amplitude(z2[j]);

    // phi depends on z1 - z2 only. With a shared spacing that difference is
    // fixed along each diagonal i - j, so one quadrature per diagonal suffices.
    const bool shared_spacing = std::abs(h1 - h2) <= 1e-12 * h1;
    if (shared_spacing) {
        const std::ptrdiff_t offset = static_cast<std::ptrdiff_t>(n2) - 1;
        std::vector<std::complex<double>> rotation(n1 + n2 - 1);
        for (std::ptrdiff_t k = -offset; k < static_cast<std::ptrdiff_t>(n1); ++k) {
            const double d = z1.front() - z2.front() + static_cast<double>(k) * h1;
            rotation[k + offset] = std::polar(1.0, phase_shift(d, 0.0, t, der, C, w));
        }
        for (std::size_t i = 0; i < n1; ++i)
            for (std::size_t j = 0; j < n2; ++j)
                grid.at(i, j) = f1[i] * f2[j] *
                                rotation[static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(j) + offset];
    } else {
        for (std::size_t i = 0; i < n1; ++i)
            for (std::size_t j = 0; j < n2; ++j)
                grid.at(i, j) = f1[i] * f2[j] * std::polar(1.0, phase_shift(z1[i], z2[j], t, der, C, w));
    }
    return grid;
}

/// Intensity-weighted spread of arg F12 relative to its weighted mean |phase|.
/// Phases are taken relative to the weighted circular mean before averaging.
/// Returns 0 for an identically zero phase.
inline double homogeneity_metric(const TwoParticleGrid& grid) {
    double total = 0.0;
    std::complex<double> resultant{0.0, 0.0};
    for (const auto& a : grid.amplitude) {
        const double weight = std::norm(a);
        total += weight;
        resultant += a * std::abs(a); // weight * exp(i arg a)
    }
    if (!(total > 0.0)) throw UndefinedMetricError("homogeneity_metric: amplitude is identically zero");

    const double center = std::arg(resultant);
    double mean_dev = 0.0;
    double mean_abs = 0.0;
    for (const auto& a : grid.amplitude) {
        const double weight = std::norm(a);
        if (weight == 0.0) continue;
        const double dev = std::remainder(std::arg(a) - center, 2.0 * constants::pi);
        mean_dev += weight * dev;
        mean_abs += weight * std::abs(center + dev);
    }
    mean_dev /= total;
    mean_abs /= total;

    double variance = 0.0;
    for (const auto& a : grid.amplitude) {
        const double weight = std::norm(a);
        if (weight == 0.0) continue;
        const double dev = std::remainder(std::arg(a) - center, 2.0 * constants::pi) - mean_dev;
        variance += weight * dev * dev;
    }
    const double spread = std::sqrt(variance / total);
    if (mean_abs == 0.0) {
        if (spread == 0.0) return 0.0;
        throw UndefinedMetricError("homogeneity_metric: weighted mean phase is zero");
    }
    return spread / mean_abs;
}

/// Singular values of the amplitude matrix, descending, scaled to sum(s^2) = 1.
inline std::vector<double> schmidt_spectrum(const TwoParticleGrid& grid) {
    const auto n1 = static_cast<Eigen::Index>(grid.z1.size());
    const auto n2 = static_cast<Eigen::Index>(grid.z2.size());
    if (n1 == 0 || n2 == 0 || grid.amplitude.size() != static_cast<std::size_t>(n1 * n2))
        throw DomainError("schmidt_spectrum: grid dimensions do not match amplitude");

    using RowMajor = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Eigen::Map<const RowMajor> matrix(grid.amplitude.data(), n1, n2);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(matrix);
    if (svd.info() != Eigen::Success) throw NumericError("schmidt_spectrum: SVD did not converge");

    const Eigen::VectorXd& s = svd.singularValues();
    const double norm = s.norm();
    if (!(norm > 0.0)) throw NumericError("schmidt_spectrum: amplitude is identically zero");
    std::vector<double> out(s.size());
    for (Eigen::Index k = 0; k < s.size(); ++k) out[k] = s[k] / norm;
    return out;
}

/// K = 1 / sum(s^4) for a normalized spectrum.
inline double schmidt_number(std::span<const double> spectrum) {
    double s4 = 0.0;
    for (double s : spectrum) s4 += s * s * s * s;
    return 1.0 / s4;
}

} // namespace rydpol
