#pragma once

#include <stdexcept>
#include <string>

namespace rydpol {

// Input outside a function's mathematical domain (non-finite, negative where
// a non-negative value is required).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Adaptive quadrature ran out of budget before reaching the requested
// tolerance. The best estimate found so far is kept for the caller.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_estimate, double error_estimate)
        : std::runtime_error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double best_estimate_;
    double error_estimate_;
};

class InvalidQuantumNumber : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SingularityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Group velocity from the EIT formula reached or exceeded c.
class SlowLightRegimeError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Sampling grid does not hold an envelope's mass to the required fraction.
class TruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UndefinedMetricError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace rydpol
