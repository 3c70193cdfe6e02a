#pragma once

#include <cmath>
#include <cstdlib>
#include <string>

#include "rydpol/constants.hpp"
#include "rydpol/errors.hpp"

namespace rydpol {

// A Rydberg level in a static field, labelled by its (effective) principal
// number n and parabolic number q = n1 - n2. Both polariton species are taken
// to share the same level, hence the same dipole moment.
struct RydbergSpec {
    int n = 1;
    int q = 0;
    double dipole_moment = 0.0;        // C m
    double interaction_constant = 0.0; // C = p^2 / (4 pi eps0 hbar), m^3 rad/s
    double gamma_d = 0.0;              // Rydberg decay rate, 1/s
};

/// Permanent dipole moment p = (3/2) n q e a0 of a parabolic Stark state.
inline double permanent_dipole_moment(int n, int q) {
    return 1.5 * n * q * constants::elementary_charge * constants::bohr_radius;
}

inline double interaction_constant(double dipole_moment) {
    return dipole_moment * dipole_moment /
           (4.0 * constants::pi * constants::vacuum_permittivity * constants::hbar);
}

inline RydbergSpec make_rydberg(int n, int q, double gamma_d) {
    if (n < 1) throw InvalidQuantumNumber("principal quantum number n must be >= 1, got " + std::to_string(n));
    if (std::abs(q) > n - 1) {
        throw InvalidQuantumNumber("parabolic quantum number must satisfy |q| <= n-1, got n=" +
                                   std::to_string(n) + ", q=" + std::to_string(q));
    }
    if (!(gamma_d > 0.0) || !std::isfinite(gamma_d))
        throw DomainError("Rydberg decay rate gamma_d must be positive and finite");

    const double p = permanent_dipole_moment(n, q);
    return {n, q, p, interaction_constant(p), gamma_d};
}

} // namespace rydpol
