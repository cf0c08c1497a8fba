#pragma once

#include <stdexcept>
#include <string>

namespace bessel4 {

/// Argument outside the domain of a function (e.g. Y or K at x <= 0).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Result would overflow double precision.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// A quadrature, series acceleration or truncation escalation failed to reach
/// its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_estimate)
        : std::runtime_error(what), best_estimate_(best_estimate) {}

    double best_estimate() const noexcept { return best_estimate_; }

private:
    double best_estimate_;
};

/// An internal consistency check failed; indicates a bug rather than bad input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace bessel4
