#pragma once

#include <cmath>
#include <map>
#include <tuple>
#include <vector>

#include "bessel4/forms.hpp"

namespace bessel4 {

/// u(r, theta) = v(r) (A cos 2 theta + B sin 2 theta) with v solving the
/// radial equation at Lambda; gamma = 8/M comes from params.
struct SeparatedSolution {
    FnBundle radial;
    double A = 1.0;
    double B = 0.0;
    Params params;
    double Lambda = 0.0;

    static SeparatedSolution from_handle(const SolutionHandle& h, double A, double B);
    /// w(theta) and its derivatives: w'' = -4 w, w'''' = 16 w.
    double angular(double theta) const;
};

/// Terms of the polar expansion of P[u] - Lambda u at one point.
struct PlumEvaluation {
    double value = 0.0;    // P_gamma[u]
    double residual = 0.0; // P_gamma[u] - Lambda u
    double scale = 0.0;    // sum of |terms| + |Lambda u|, the rounding scale
    double relative() const { return scale > 0.0 ? std::abs(residual) / scale : std::abs(residual); }
};

/// P_gamma[u] = lap^2 u - gamma lap u - (4 gamma / r^2) u from the polar
/// expansion of the biharmonic term, radial derivatives from the bundle and
/// angular derivatives exact.
PlumEvaluation apply_plum(const SeparatedSolution& u, double r, double theta);

/// max over grid of |v'''' + (2/r) v''' - (9/r^2 + gamma) v'' + (9/r^3 - gamma/r) v' - Lambda v|
/// divided by (1 + |Lambda v|).
double separation_residual(const FnBundle& v, const Params& params, double Lambda, const std::vector<double>& grid);
/// Pointwise value of the radial expression above (without normalisation).
long double radial_expression(const FnBundle& v, const Params& params, double Lambda, long double r);

/// Differential operator sum c r^{-j} gamma^g d^k/dr^k with exact
/// coefficients, keyed by (k, j, g).
class RadialOperator {
public:
    using Key = std::tuple<int, int, int>;

    void add(int order, int inverse_power, int gamma_power, double coefficient);
    RadialOperator operator+(const RadialOperator& o) const;
    RadialOperator operator*(double s) const;
    /// Composition (this o o) by the Leibniz rule.
    RadialOperator compose(const RadialOperator& o) const;
    const std::map<Key, double>& terms() const { return terms_; }
    bool operator==(const RadialOperator& o) const;

private:
    std::map<Key, double> terms_;
};

/// Radial operator obtained by substituting u = v(r) w(theta) with
/// w'' = -c w into P_gamma (the common factor w dropped).
RadialOperator separated_operator(double c);
/// The radial ODE operator divided by r (the Lambda term excluded).
RadialOperator radial_ode_operator();
/// True iff the separated operator for w'' = -c w equals the radial ODE.
bool angular_criticality_check(double c);

} // namespace bessel4
