#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "bessel4/bessel_type.hpp"
#include "bessel4/measures.hpp"

namespace bessel4 {

struct TransformResult {
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<double> errors; // quadrature error estimate per grid point
    std::vector<bool> converged;
    RealFn evaluator;
    double parseval_lhs = 0.0;
    double parseval_rhs = 0.0;
    double truncation = 0.0; // X (forward) or Lambda (inverse) finally used
};

/// The pair H0(s) = int_0^X x J0(s x) f(x) dx, H1(s) = int_0^X J1(s x) f(x) dx.
/// J0, J1 are tabulated once on fixed panels in t = s x, so evaluating many
/// s values costs one pass over f per s. The truncation X is the support
/// end for compactly supported f, otherwise the first of 25, 50, 100, 200
/// whose tail bound int_X^2X (1 + x)|f| dx times `weight_bound` is <= tol.
class HankelMoments {
public:
    struct Value {
        double h0 = 0.0, h1 = 0.0, error = 0.0;
    };

    HankelMoments(RealFn f, double support_end, double tol, double weight_bound = 1.0);

    Value operator()(double s) const;
    double truncation() const { return X_; }

private:
    RealFn f_;
    double X_ = 0.0;
};

/// g(s) = int_0^inf xi J0(s xi) f(xi) d xi by oscillatory acceleration.
TransformResult hankel_forward(const MeasurableFn& f, const std::vector<double>& s_grid, double tol = 1e-10);

/// int_0^inf s J0(s x) g(s) ds with g the Hankel transform of f (supported
/// in [0, support_end], or decaying when support_end = 0), as the mean of
/// the truncations at S in [S_max/2, S_max] with S_max escalated through 25,
/// 50, 100, 200.
double hankel_roundtrip(const MeasurableFn& f, double x_point, double support_end = 0.0, double tol = 1e-6);

/// g(lambda) = (M/2) f(0) + int_0^X x J_lambda(x) f(x) dx with J_lambda the
/// regular solution (value 1 at 0). The evaluator is valid for any lambda >= 0.
TransformResult generalized_forward(const MeasurableFn& f, const Params& params, const std::vector<double>& lambda_grid,
                                    double support_end = 0.0, double tol = 1e-10);

/// f(0) = int g dn; f(x) = int J_lambda(x) g(lambda) dn(lambda) for x > 0,
/// truncated at Lambda and averaged over [Lambda/2, Lambda], Lambda escalated
/// through 25, 50, 100, 200 until successive results differ by < tol.
TransformResult generalized_inverse(const RealFn& g, const Params& params, const std::vector<double>& x_grid, double tol = 1e-6);

struct GeneralizedChecks {
    double parseval_lhs = 0.0;   // int |g|^2 dn
    double parseval_rhs = 0.0;   // (M/2) f(0)^2 + int x f^2
    double moment = 0.0;         // int g dn
    double f0 = 0.0;
    std::vector<double> x_points; // roundtrip points (0 first)
    std::vector<double> roundtrip;
    std::vector<double> expected;
};

/// Parseval, moment identity and G(F f) at the given points for one f,
/// sharing one tabulation of g.
GeneralizedChecks generalized_checks(const MeasurableFn& f, const Params& params, const std::vector<double>& x_points,
                                     double support_end = 0.0);

/// int_0^inf J_lambda(eta) dn(lambda); zero for every eta > 0.
double vanishing_moment(double eta, const Params& params, double tol = 1e-9);

/// J_lambda(x) = d J0(lambda x) - (M lambda / 2) x^{-1} J1(lambda x) without
/// building a solution object; exact value 1 at x = 0.
double regular_solution_value(double lambda, double x, const Params& params);

/// lambda int_0^X x J0(lambda x) J0(mu x) dx (closed form).
double ortho_kernel_classical(double lambda, double mu, double X);

/// lambda (1 + M lambda^2/4)^{-2} {int_0^X x J_lambda J_mu dx + M/2}, with
/// the integral from Green's formula and the boundary form at 0.
double ortho_kernel_generalized(double lambda, double mu, const Params& params, double X);

/// Same kernel with the integral by quadrature (independent route).
double ortho_kernel_generalized_quadrature(double lambda, double mu, const Params& params, double X);

/// int kernel(lambda, mu, X) phi(mu) dmu over the support [lo, hi] of phi.
double delta_family_classical(double lambda, double X, const RealFn& phi, double lo, double hi);
double delta_family_generalized(double lambda, const Params& params, double X, const RealFn& phi, double lo, double hi);

/// Mean of ortho_kernel_classical(lambda, mu, X) over X in [a, b].
double cesaro_classical(double lambda, double mu, double a, double b);

} // namespace bessel4
