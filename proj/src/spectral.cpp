#include "bessel4/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "bessel4/errors.hpp"

namespace bessel4 {

ExtensionParams ExtensionParams::normalized(double alpha, double beta)
{
    const double n = std::hypot(alpha, beta);
    if (!(n > 0.0))
        throw DomainError("ExtensionParams: (alpha, beta) must not both vanish");
    alpha /= n;
    beta /= n;
    if (alpha < 0.0 || (alpha == 0.0 && beta < 0.0)) {
        alpha = -alpha;
        beta = -beta;
    }
    return {alpha, beta};
}

double extension_boundary_condition(const ExtensionParams& e, const BoundaryData& b)
{
    return -e.alpha * b.f2 + 2.0 * e.beta * b.f0;
}

EigenCandidate decaying_regular_solution(double mu, const Params& params)
{
    const long double M = params.M;
    const long double window = -16.0L / (M * M);
    if (!(mu < 0.0))
        throw DomainError("decaying_regular_solution: mu must be negative");
    if (!(mu > window))
        throw DomainError("degenerate-decay");

    // t^2 + (8/M) t - mu = 0
    const long double s = std::sqrt(16.0L / (M * M) + mu);
    const long double t_roots[2] = {-4.0L / M + s, -4.0L / M - s};
    std::vector<BesselPiece> pieces;
    double rates[2];
    for (int i = 0; i < 2; ++i) {
        const long double t = t_roots[i];
        const long double c = std::sqrt(t + 8.0L / M); // sqrt(4/M +- s)
        const long double d = 1.0L + M * t / 4.0L;
        const long double sign = i == 0 ? 1.0L : -1.0L;
        pieces.push_back({BesselFamily::K, c, sign * d, sign * c * M / 2.0L});
        rates[i] = static_cast<double>(c);
    }
    if (!(rates[0] > rates[1]))
        throw DomainError("degenerate-decay");

    BesselCombination comb(pieces);
    LogPowerSeries series = comb.small_series();
    long double scale = 0.0L;
    for (int p = 0; p <= 4; ++p)
        scale = std::max(scale, std::fabs(series.coeff(p, 0)));
    // x^{-2}, x^{-1}, and log terms below x^4 must cancel
    const long double tol = 1e-14L * std::max(scale, 1.0L);
    for (int p = series.min_power(); p < 4; ++p) {
        for (int q = 0; q <= series.max_log_degree(); ++q) {
            if (p >= 0 && q == 0)
                continue;
            if (std::fabs(series.coeff(p, q)) > tol)
                throw InternalError("regularity-failure");
            series.set(p, q, 0.0L);
        }
    }
    comb = comb.with_series(series);

    EigenCandidate out;
    out.mu = mu;
    out.a_plus = rates[0];
    out.a_minus = rates[1];
    out.combination = comb;
    out.fn = make_bundle(comb);
    out.boundary = BoundaryData{static_cast<double>(series.coeff(0, 0)), static_cast<double>(2.0L * series.coeff(2, 0))};
    out.fn.boundary = out.boundary;

    std::vector<double> grid;
    for (int i = 0; i < 40; ++i)
        grid.push_back(0.01 * std::pow(3000.0, i / 39.0));
    out.residual = residual_LM(out.fn, mu, grid, params);
    if (!(out.residual <= 1e-6))
        throw InternalError("decaying_regular_solution: residual check failed");
    return out;
}

ExtensionParams extension_for_eigenvalue(double mu, const Params& params)
{
    const EigenCandidate c = decaying_regular_solution(mu, params);
    return ExtensionParams::normalized(2.0 * c.boundary.f0, c.boundary.f2);
}

SkScanReport sk_no_eigenvalue_scan(double k, const Params& params, const std::vector<double>& mu_grid, double floor)
{
    if (!(k > 0.0))
        throw DomainError("sk_no_eigenvalue_scan: k must be positive");
    SkScanReport rep;
    rep.k = k;
    rep.floor = floor;
    rep.all_passed = true;
    for (double mu : mu_grid) {
        SkScanEntry e;
        e.mu = mu;
        try {
            const EigenCandidate c = decaying_regular_solution(mu, params);
            const double f0 = c.boundary.f0, f2 = c.boundary.f2;
            // (S_k y)(0) = mu y(0) would need -8 f''(0)/k = mu f(0)
            const double lhs = -8.0 * f2 / k, rhs = mu * f0;
            e.defect = std::fabs(lhs - rhs) / (std::fabs(lhs) + std::fabs(rhs));
            e.tested = true;
            e.passed = e.defect > floor;
        } catch (const DomainError& err) {
            e.note = err.what();
        }
        rep.all_passed = rep.all_passed && (e.passed || !e.tested);
        rep.entries.push_back(e);
    }
    return rep;
}

double lambda_from_Lambda(double Lambda, const Params& params)
{
    if (Lambda < 0.0)
        throw DomainError("lambda_from_Lambda: Lambda must be >= 0");
    // lambda^2 = -4/M + sqrt(16/M^2 + Lambda), written without cancellation
    const double a = 4.0 / params.M;
    const double l2 = Lambda / (a + std::sqrt(a * a + Lambda));
    return std::sqrt(l2);
}

double oscillation_envelope(double Lambda, const Params& params, double a, double b)
{
    const double lam = lambda_from_Lambda(Lambda, params);
    const SolutionHandle J(SolutionKind::Jtype, lam, params);
    const SolutionHandle Y(SolutionKind::Ytype, lam, params);
    double worst = INFINITY;
    const int n = 400;
    for (int i = 0; i <= n; ++i) {
        const double x = a + (b - a) * i / n;
        const double j = J.value(x), y = Y.value(x);
        worst = std::min(worst, std::sqrt(x) * std::hypot(j, y));
    }
    return worst;
}

} // namespace bessel4
