#pragma once

#include <functional>

namespace bessel4 {

using RealFn = std::function<double(double)>;

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
    int evaluations = 0;
};

enum class EndpointSingularity { none, left, right, both };

/// Globally adaptive Gauss-Kronrod (7/15) quadrature on [a, b] with the
/// QUADPACK error estimate. Integrable endpoint singularities (log or
/// inverse square root) are handled by x = a + (b - a) u^2 when flagged.
/// Exhausting the subdivision budget returns converged = false with the
/// best estimate. A positive rel_tol also accepts error <= rel_tol |value|.
QuadResult adaptive_quad(const RealFn& f, double a, double b, double tol,
                         EndpointSingularity singular = EndpointSingularity::none, int max_subdivisions = 4000,
                         double rel_tol = 0.0);

/// Single 15-point Kronrod panel; returns value and the 7-point Gauss value.
struct KronrodPanel {
    double kronrod;
    double gauss;
};
KronrodPanel gauss_kronrod_panel(const RealFn& f, double a, double b);

/// Nodes and weights of the 15-point Kronrod rule on [a, b], for callers
/// that want to reuse function values across several integrals. The
/// optional gauss_weights receive the embedded 7-point rule (0 at the
/// Kronrod-only nodes).
void kronrod_nodes(double a, double b, double* nodes, double* weights, double* gauss_weights = nullptr);

/// Integral over [start, inf) of an integrand that oscillates with
/// asymptotic half-period `spacing`: partial sums over brackets of that
/// length are accelerated with Wynn's epsilon algorithm. The first
/// bracket begins at `start`; [0, start] must be handled by the caller.
QuadResult oscillatory_tail(const RealFn& f, double start, double spacing, double tol, int max_brackets = 200);

/// Integral over [0, inf) of an oscillatory integrand (see oscillatory_tail).
QuadResult oscillatory_semi_infinite(const RealFn& f, double spacing, double tol, double start = 0.0);

/// Integral over [a, inf) of a non-oscillatory integrand decaying faster
/// than 1/x: [a, a + split] directly, the rest with u = 1/x.
QuadResult semi_infinite_quad(const RealFn& f, double a, double tol, double split = 10.0);

/// Limit of a sequence by Wynn's epsilon algorithm over the given terms.
double wynn_epsilon(const double* partial_sums, int count);

} // namespace bessel4
