#pragma once

// EIT slow-light parameters derived from the medium, and the validity checks
// that the adiabatic single-polariton picture relies on.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "rydpol/constants.hpp"
#include "rydpol/errors.hpp"
#include "rydpol/potential.hpp"
#include "rydpol/rydberg.hpp"

namespace rydpol {

// Both arms share one drive Rabi frequency, so both polaritons have the same
// mixing angle and group velocity.
struct MediumConfig {
    double rho = 0.0;      // atomic density, m^-3
    double L = 0.0;        // medium length, m
    double lambda = 0.0;   // probe wavelength, m
    double gamma_ge = 0.0; // g-e coherence decay, 1/s
    double Omega = 0.0;    // drive Rabi frequency, rad/s
    double w = 0.0;        // transverse width, m
    double T = 0.0;        // pulse duration, s
    RydbergSpec rydberg;

    Geometry geometry() const { return {w, L}; }
};

inline void validate(const MediumConfig& cfg) {
    auto require_positive = [](double value, const char* name) {
        if (!(value > 0.0) || !std::isfinite(value))
            throw DomainError(std::string("medium parameter '") + name + "' must be positive and finite");
    };
    require_positive(cfg.rho, "rho");
    require_positive(cfg.L, "L");
    require_positive(cfg.lambda, "lambda");
    require_positive(cfg.gamma_ge, "gamma_ge");
    require_positive(cfg.Omega, "Omega");
    require_positive(cfg.w, "w");
    require_positive(cfg.T, "T");
    if (!(cfg.rydberg.gamma_d >= 0.0)) throw DomainError("Rydberg decay rate must be non-negative");
}

struct DerivedEit {
    double kappa0 = 0.0;      // resonant absorption coefficient, 1/m
    double sin2_theta = 0.0;  // sin^2 of the polariton mixing angle
    double v = 0.0;           // group velocity, m/s
    double v_approx = 0.0;    // 2 Omega^2 / (kappa0 gamma_ge), m/s
    double delta_omega = 0.0; // EIT bandwidth, rad/s
    double t_out = 0.0;       // transit time L/v, s

    double sin4_theta() const { return sin2_theta * sin2_theta; }
};

inline double absorption_coefficient(double lambda, double rho) {
    return 3.0 * lambda * lambda * rho / (2.0 * constants::pi);
}

/// Group velocity and mixing angle follow from v = 2 Omega^2/(kappa0 gamma_ge);
/// sin^2 theta = 1 - v/c is back-derived from it. v is stored as computed so
/// downstream quantities do not inherit the cancellation in 1 - sin^2 theta.
inline DerivedEit derive_eit(const MediumConfig& cfg) {
    validate(cfg);
    DerivedEit d;
    d.kappa0 = absorption_coefficient(cfg.lambda, cfg.rho);
    d.v_approx = 2.0 * cfg.Omega * cfg.Omega / (d.kappa0 * cfg.gamma_ge);
    if (!(d.v_approx < constants::speed_of_light)) {
        throw SlowLightRegimeError("group velocity 2 Omega^2/(kappa0 gamma_ge) = " + std::to_string(d.v_approx) +
                                   " m/s is not below c; the slow-light expansion does not apply");
    }
    d.v = d.v_approx;
    d.sin2_theta = 1.0 - d.v / constants::speed_of_light;
    d.delta_omega = cfg.Omega * cfg.Omega / (cfg.gamma_ge * std::sqrt(d.kappa0 * cfg.L));
    d.t_out = cfg.L / d.v;
    return d;
}

/// Pulse duration that puts T v / L in the middle of its allowed window.
inline constexpr double default_window_fraction = 0.3;

inline double default_pulse_duration(double L, double v) { return default_window_fraction * L / v; }

inline double fidelity(const MediumConfig& cfg, const DerivedEit& der) {
    return std::exp(-cfg.rydberg.gamma_d * cfg.L / der.v);
}

// One inequality lhs < rhs (or lhs << rhs). margin_ratio = rhs/lhs; the check
// passes when margin_ratio exceeds the threshold (1 for "<", the margin
// factor for "<<").
struct FeasibilityCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin_ratio = 0.0;
    double threshold = 1.0;
    bool pass = false;
};

struct FeasibilityReport {
    std::vector<FeasibilityCheck> checks;
    bool overall_pass = false;

    const FeasibilityCheck& check(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return c;
        throw std::out_of_range("no feasibility check named '" + name + "'");
    }
};

inline constexpr double default_margin_factor = 10.0;

namespace feasibility_names {
inline constexpr const char* optical_depth = "optical_depth";
inline constexpr const char* pulse_window_lower = "pulse_window_lower";
inline constexpr const char* pulse_window_upper = "pulse_window_upper";
inline constexpr const char* shift_within_bandwidth = "shift_within_bandwidth";
inline constexpr const char* rydberg_decay = "rydberg_decay";
} // namespace feasibility_names

/// Peak magnitude of the 1D shift, 2 sqrt(pi) C / w^3.
inline double peak_shift(double C, double w) { return 2.0 * constants::sqrt_pi * C / (w * w * w); }

inline FeasibilityReport feasibility(const MediumConfig& cfg, const DerivedEit& der,
                                     double margin_factor = default_margin_factor) {
    if (!(margin_factor >= 1.0)) throw DomainError("margin factor must be >= 1");

    auto make = [](const char* name, double lhs, double rhs, double threshold) {
        const double ratio = lhs > 0.0 ? rhs / lhs : std::numeric_limits<double>::infinity();
        return FeasibilityCheck{name, lhs, rhs, ratio, threshold, ratio > threshold};
    };

    const double optical_depth = der.kappa0 * cfg.L;
    const double window = cfg.T * der.v / cfg.L;

    FeasibilityReport report;
    report.checks.push_back(make(feasibility_names::optical_depth, 1.0, optical_depth, margin_factor));
    report.checks.push_back(
        make(feasibility_names::pulse_window_lower, 1.0 / std::sqrt(optical_depth), window, margin_factor));
    report.checks.push_back(make(feasibility_names::pulse_window_upper, window, 1.0, 1.0));
    report.checks.push_back(make(feasibility_names::shift_within_bandwidth,
                                 peak_shift(cfg.rydberg.interaction_constant, cfg.w), der.delta_omega, 1.0));
    report.checks.push_back(
        make(feasibility_names::rydberg_decay, der.t_out * cfg.rydberg.gamma_d, 1.0, margin_factor));

    report.overall_pass = true;
    for (const auto& c : report.checks) report.overall_pass = report.overall_pass && c.pass;
    return report;
}

} // namespace rydpol
