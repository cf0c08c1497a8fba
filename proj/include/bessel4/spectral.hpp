#pragma once

#include <string>
#include <vector>

#include "bessel4/bessel_type.hpp"
#include "bessel4/forms.hpp"

namespace bessel4 {

/// Projective pair (alpha : beta) selecting the boundary condition
/// -alpha f''(0) + 2 beta f(0) = 0. Normalised to unit length with the
/// first nonzero coordinate positive.
struct ExtensionParams {
    double alpha = 0.0;
    double beta = 1.0;

    static ExtensionParams normalized(double alpha, double beta);
};

/// -alpha f2 + 2 beta f0 (zero iff f satisfies the boundary condition).
double extension_boundary_condition(const ExtensionParams& e, const BoundaryData& b);

struct EigenCandidate {
    double mu = 0.0;
    double a_plus = 0.0;  // faster decay rate
    double a_minus = 0.0; // slower decay rate
    BesselCombination combination;
    FnBundle fn;
    BoundaryData boundary;
    double residual = 0.0; // residual_LM against Lambda = mu on [0.01, 30]
};

/// Regular solution of L y = mu x y decaying at infinity, for
/// mu in (-16/M^2, 0): the difference of the two K-type solutions whose
/// x^{-2} and ln x parts coincide. Throws DomainError("degenerate-decay")
/// outside the window and InternalError("regularity-failure") if the
/// singular parts do not cancel.
EigenCandidate decaying_regular_solution(double mu, const Params& params);

/// (alpha : beta) = (2 f(0) : f''(0)) of the candidate.
ExtensionParams extension_for_eigenvalue(double mu, const Params& params);

struct SkScanEntry {
    double mu = 0.0;
    double defect = 0.0;
    bool tested = false;
    bool passed = false;
    std::string note;
};

struct SkScanReport {
    double k = 0.0;
    double floor = 1e-3;
    std::vector<SkScanEntry> entries;
    bool all_passed = false;
};

/// For each mu, the relative mismatch |a - b| / (|a| + |b|) in [0, 1] of
/// a = -8 f''(0)/k and b = mu f(0) for the decaying regular candidate; an
/// eigenvalue of S_k would make it vanish. Independent of the scale of f and of M.
SkScanReport sk_no_eigenvalue_scan(double k, const Params& params, const std::vector<double>& mu_grid, double floor = 1e-3);

/// min over [a, b] of sqrt(x) * sqrt(J^2 + Y^2) for the J- and Y-type
/// solutions with Lambda > 0; bounded away from 0 means the solutions
/// oscillate without decaying (no square-integrable candidate).
double oscillation_envelope(double Lambda, const Params& params, double a = 50.0, double b = 100.0);

/// lambda >= 0 with Lambda(lambda) = Lambda, for Lambda >= 0.
double lambda_from_Lambda(double Lambda, const Params& params);

} // namespace bessel4
