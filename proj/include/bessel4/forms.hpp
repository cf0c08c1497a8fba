#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "bessel4/bessel_type.hpp"
#include "bessel4/frobenius.hpp"
#include "bessel4/jet.hpp"

namespace bessel4 {

/// Limits f(0+) and f''(0+) of a maximal-domain function.
struct BoundaryData {
    double f0 = 0.0;
    double f2 = 0.0;
};

using JetEvaluator = std::function<Jet(long double x, int order)>;

/// A function on (0, inf) with value and derivatives up to order 8.
struct FnBundle {
    JetEvaluator eval;
    std::optional<BoundaryData> boundary;

    Jet at(long double x, int order) const { return eval(x, order); }
    long double value(long double x) const { return eval(x, 0).value(); }
};

FnBundle make_bundle(const SolutionHandle& h);
FnBundle make_bundle(const BesselCombination& c);
FnBundle make_bundle(const FrobeniusSeries& s);
/// sum c_i x^i; exact local stand-in for the patched functions 1, x, x^2.
FnBundle polynomial_bundle(std::vector<long double> coeffs);
FnBundle sum(const std::vector<std::pair<long double, FnBundle>>& terms);
FnBundle product(const FnBundle& a, const FnBundle& b);

/// x f'''' + 2 f''' - (9/x + 8x/M) f'' + (9/x^2 - 8/M) f', the expanded
/// form of (x f'')'' - ((9/x + 8x/M) f')'.
long double apply_LM(const FnBundle& f, long double x, const Params& params);
long double apply_LM(const Jet& f, long double x, const Params& params);

/// max over grid of |L f - Lambda x f| / (1 + |Lambda x f|).
double residual_LM(const FnBundle& f, double Lambda, const std::vector<double>& grid, const Params& params);
double residual_LM(const SolutionHandle& h, double Lambda, const std::vector<double>& grid);

/// g (x f'')' - (x g'')' f - x (g' f'' - g'' f') - (9/x + 8x/M)(g f' - g' f).
long double symplectic_form(const FnBundle& f, const FnBundle& g, long double x, const Params& params);
/// -g (x f'')' + g' x f'' + g (9/x + 8x/M) f'.
long double dirichlet_form(const FnBundle& f, const FnBundle& g, long double x, const Params& params);

/// |int_a^b (g L f - f L g) - [f,g](b) + [f,g](a)|.
double greens_check(const FnBundle& f, const FnBundle& g, double a, double b, const Params& params, double tol);
/// |int_a^b (x f'' g'' + (9/x + 8x/M) f' g') - [f,g]_D(b) + [f,g]_D(a) - int_a^b g L f|.
double dirichlet_check(const FnBundle& f, const FnBundle& g, double a, double b, const Params& params, double tol);

struct BoundaryExtraction {
    BoundaryData data;
    double f1 = 0.0;            // extrapolated f'(0+)
    double x_f3 = 0.0;          // extrapolated x f'''(x) at 0+
    double form_with_one = 0.0; // [f,1](0+)
    double form_with_x2 = 0.0;  // [f,x^2](0+)
};

/// Extrapolates f(0+), f''(0+) from x = 1e-2, 5e-3, ... and cross-checks
/// [f,1](0+) = -8 f''(0) and [f,x^2](0+) = 16 f(0) to 1e-5 relative; throws
/// DomainError("not in maximal domain") when a check fails.
BoundaryExtraction extract_boundary(const FnBundle& f, const Params& params);
BoundaryData boundary_data(const FnBundle& f, const Params& params);

/// Limit at 0+ of a function of the form a + b x^2 ln x + c x^2 + d x^4 ln x + e x^4,
/// sampled on the geometric grid x0, x0/2, ...
double limit_at_zero(const std::function<long double(long double)>& h, double x0 = 1e-2);

/// (S_k f)(0) = -8 f''(0)/k; (S_k f)(x) = L f(x) / x for x > 0.
long double apply_Sk(const FnBundle& f, double k, long double x, const Params& params);

/// (S_k f, f) in L^2([0, inf); m_k) with the integral over [a, b]:
/// k (S_k f)(0) f(0) + int_a^b f L f.
double sk_inner(const FnBundle& f, double k, double a, double b, const Params& params, double tol);

/// Order-6 or order-8 Bessel-type expression applied to f at x.
long double apply_higher_order(int order, const FnBundle& f, long double x, const Params& params);

/// int_a^b {x f''^2 + (9/x + 8x/M) f'^2}.
double dirichlet_integral(const FnBundle& f, double a, double b, const Params& params, double tol);
/// int_a^b f L f (the inner product (T f, f) in L^2((0, inf); x) restricted to [a, b]).
double operator_inner(const FnBundle& f, double a, double b, const Params& params, double tol);

} // namespace bessel4
