#pragma once

#include "bessel4/log_series.hpp"

namespace bessel4 {

enum class BesselFamily { J, Y, I, K };

struct BesselKind {
    BesselFamily family;
    int order; // 0 or 1
};

/// Order-0 and order-1 values of one family at the same argument.
struct BesselPair {
    long double z0;
    long double z1;
};

/// Z_0(x) and Z_1(x) in extended precision.
///
/// J, Y: power series below 2, Miller backward recurrence with Neumann
/// sums up to 25, Hankel asymptotics beyond. I: power series up to 30,
/// asymptotic beyond. K: logarithmic series up to 2, Steed's continued
/// fraction beyond.
BesselPair bessel_pair(BesselFamily family, long double x);

double bessel_eval(BesselKind kind, double x);
double bessel_eval_derivative(BesselKind kind, double x);

/// Signs in  Z0' = s0 Z1,  Z1' = s1 Z0 - Z1/x.
struct DerivativeSigns {
    int s0;
    int s1;
};
DerivativeSigns derivative_signs(BesselFamily family);

/// Z_order(scale * x) as a log-power series in x, keeping `terms` terms of
/// each power series involved.
LogPowerSeries small_argument_series(BesselFamily family, int order, long double scale, int terms);

/// Euler-Mascheroni constant.
inline constexpr long double euler_gamma = 0.577215664901532860606512090082402431L;
inline constexpr long double pi_ld = 3.141592653589793238462643383279502884L;

} // namespace bessel4
