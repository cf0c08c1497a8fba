#pragma once

#include <vector>

#include "bessel4/bessel_type.hpp"
#include "bessel4/jet.hpp"
#include "bessel4/log_series.hpp"

namespace bessel4 {

/// coeff * x^power * y^(deriv)
struct LaurentTerm {
    int deriv;
    int power;
    long double coeff;
};

/// Expanded differential expression of the Bessel-type operator of the
/// given even order (4, 6 or 8), without the spectral term:
///   4: (x y'')'' - ((9/x + 8x/M) y')'
///   6: -(x^3 y''')''' + (33 x y'')'' - ((225/x + 96 x^3/M) y')'
///   8: (x^5 y'''')'''' - (78 x^3 y''')''' + (1809 x y'')'' - ((11025/x + 1536 x^5/M) y')'
std::vector<LaurentTerm> bessel_type_expression(int order, const Params& params);

/// Weight power w in  expression = Lambda x^w y  (1, 3, 5 for orders 4, 6, 8).
int bessel_type_weight_power(int order);

/// Applies a list of Laurent terms to a jet of sufficient order at x.
long double apply_terms(const std::vector<LaurentTerm>& terms, const Jet& f, long double x);

/// Linear ODE  sum coeff x^power y^(deriv) = 0  with a regular singular
/// point at 0.
struct OdeSpec {
    int order = 4;
    Params params;
    double Lambda = 0.0;
    std::vector<LaurentTerm> terms;

    /// Order 4 in the divided form  y'''' + 2/x y''' - (9/x^2 + 8/M) y''
    /// + (9/x^3 - 8/(Mx)) y' - Lambda y = 0; orders 6 and 8 as
    /// expression - Lambda x^w y = 0.
    static OdeSpec bessel_type(int order, const Params& params, double Lambda);
};

/// Indicial roots, sorted descending. Throws when the indicial polynomial
/// vanishes identically or has non-integer roots.
std::vector<int> indicial_roots(const OdeSpec& spec);

struct LogBlock {
    int power;
    int log_degree;
    long double coeff;
};

/// y = sum_n coeffs[n] x^{root+n} + sum_blocks coeff x^power ln^q x.
struct FrobeniusSeries {
    int root = 0;
    std::vector<long double> coeffs;
    std::vector<LogBlock> log_blocks;
    int N = 0;

    LogPowerSeries to_log_series() const;
    /// Value and derivatives up to `order` at x > 0.
    Jet jet(long double x, int order) const;
};

/// Frobenius solution attached to `root`: leading coefficient 1, and the
/// free coefficient at every higher resonant power set to zero (reduction
/// modulo the solutions of higher roots).
FrobeniusSeries frobenius_solution(const OdeSpec& spec, int root, int N);

/// The root-4 solution x^4 + x^6/(3M) + ... of the fourth-order equation.
FrobeniusSeries y4_series(double Lambda, const Params& params, int N);

/// Solutions attached to the roots 2, 0, -2 (in that order).
std::vector<FrobeniusSeries> log_case_basis(double Lambda, const Params& params, int N);

} // namespace bessel4
