#pragma once

#include <functional>
#include <string>
#include <vector>

namespace bessel4 {

struct VerifyOptions {
    double M = 1.0;
    /// Quadrature and acceleration tolerance for integrated checks; each
    /// check uses min(tol, threshold / 10) so effort never loosens a threshold.
    double tol = 1e-5;
};

/// One invariant evaluated: passes iff measured <= threshold.
struct CheckResult {
    std::string id;
    std::string description;
    double measured = 0.0;
    double threshold = 0.0;
    bool passed = false;
    double seconds = 0.0;
    std::string detail;
    bool nonconvergence = false; // a ConvergenceError ended the check
};

struct InvariantCheck {
    std::string id; // stable "module.invariant" identifier
    std::string description;
    std::function<CheckResult(const VerifyOptions&)> run;
};

/// Every invariant of the library, in a fixed order.
const std::vector<InvariantCheck>& invariant_registry();

/// Runs one invariant by id (timing included); exceptions from the numerics
/// are recorded as a failed result with the message in `detail`.
CheckResult run_invariant(const std::string& id, const VerifyOptions& options);

/// Runs all invariants whose id starts with one of the prefixes (all when empty).
std::vector<CheckResult> run_verification(const VerifyOptions& options, const std::vector<std::string>& prefixes = {});

} // namespace bessel4
