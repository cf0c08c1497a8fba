#include "bessel4/forms.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "bessel4/errors.hpp"
#include "bessel4/quadrature.hpp"

namespace bessel4 {

namespace {

long double weight_p(long double x, const Params& params) { return 9.0L / x + 8.0L * x / params.M; }

long double to_ld(double v) { return static_cast<long double>(v); }

} // namespace

FnBundle make_bundle(const SolutionHandle& h)
{
    FnBundle b;
    b.eval = [h](long double x, int order) { return h.jet(x, order); };
    return b;
}

FnBundle make_bundle(const BesselCombination& c)
{
    FnBundle b;
    b.eval = [c](long double x, int order) { return c.jet(x, order); };
    return b;
}

FnBundle make_bundle(const FrobeniusSeries& s)
{
    // cache the derivative series once
    std::vector<LogPowerSeries> d{s.to_log_series()};
    for (int k = 1; k <= Jet::max_order; ++k)
        d.push_back(d.back().derivative());
    FnBundle b;
    b.eval = [d](long double x, int order) {
        long double v[Jet::max_order + 1];
        for (int k = 0; k <= order; ++k)
            v[k] = d[k].eval(x);
        return Jet::from_derivatives(v, order);
    };
    if (s.root >= 0) {
        const LogPowerSeries& s0 = d[0];
        if (s0.coeff(0, 1) == 0.0L && s0.coeff(2, 1) == 0.0L)
            b.boundary = BoundaryData{static_cast<double>(s0.coeff(0, 0)), static_cast<double>(2.0L * s0.coeff(2, 0))};
    }
    return b;
}

FnBundle polynomial_bundle(std::vector<long double> coeffs)
{
    FnBundle b;
    b.eval = [coeffs](long double x, int order) {
        Jet t = Jet::variable(x, order);
        Jet r(0.0L, order);
        Jet pw(1.0L, order);
        for (long double c : coeffs) {
            r += pw * c;
            pw *= t;
        }
        return r;
    };
    const long double c0 = coeffs.empty() ? 0.0L : coeffs[0];
    const long double c2 = coeffs.size() > 2 ? coeffs[2] : 0.0L;
    b.boundary = BoundaryData{static_cast<double>(c0), static_cast<double>(2.0L * c2)};
    return b;
}

FnBundle sum(const std::vector<std::pair<long double, FnBundle>>& terms)
{
    FnBundle b;
    b.eval = [terms](long double x, int order) {
        Jet r(0.0L, order);
        for (const auto& [c, f] : terms)
            r += f.eval(x, order) * c;
        return r;
    };
    bool all = true;
    BoundaryData bd;
    for (const auto& [c, f] : terms) {
        if (!f.boundary) {
            all = false;
            break;
        }
        bd.f0 += static_cast<double>(c) * f.boundary->f0;
        bd.f2 += static_cast<double>(c) * f.boundary->f2;
    }
    if (all)
        b.boundary = bd;
    return b;
}

FnBundle product(const FnBundle& a, const FnBundle& b)
{
    FnBundle r;
    r.eval = [a, b](long double x, int order) { return a.eval(x, order) * b.eval(x, order); };
    return r;
}

long double apply_LM(const Jet& f, long double x, const Params& params)
{
    const long double d1 = f.derivative(1), d2 = f.derivative(2), d3 = f.derivative(3), d4 = f.derivative(4);
    return x * d4 + 2.0L * d3 - weight_p(x, params) * d2 + (9.0L / (x * x) - 8.0L / params.M) * d1;
}

long double apply_LM(const FnBundle& f, long double x, const Params& params)
{
    if (!(x > 0.0L))
        throw DomainError("apply_LM: x must be positive");
    return apply_LM(f.eval(x, 4), x, params);
}

double residual_LM(const FnBundle& f, double Lambda, const std::vector<double>& grid, const Params& params)
{
    double worst = 0.0;
    for (double x : grid) {
        if (!(x > 0.0))
            throw DomainError("residual_LM: grid must be positive");
        const Jet j = f.eval(x, 4);
        const long double rhs = to_ld(Lambda) * x * j.value();
        const long double r = std::fabs(apply_LM(j, x, params) - rhs) / (1.0L + std::fabs(rhs));
        worst = std::max(worst, static_cast<double>(r));
    }
    return worst;
}

double residual_LM(const SolutionHandle& h, double Lambda, const std::vector<double>& grid)
{
    return residual_LM(make_bundle(h), Lambda, grid, h.params());
}

long double symplectic_form(const FnBundle& f, const FnBundle& g, long double x, const Params& params)
{
    const Jet F = f.eval(x, 3), G = g.eval(x, 3);
    const long double f0 = F.derivative(0), f1 = F.derivative(1), f2 = F.derivative(2), f3 = F.derivative(3);
    const long double g0 = G.derivative(0), g1 = G.derivative(1), g2 = G.derivative(2), g3 = G.derivative(3);
    // (x f'')' = f'' + x f'''
    return g0 * (f2 + x * f3) - (g2 + x * g3) * f0 - x * (g1 * f2 - g2 * f1)
           - weight_p(x, params) * (g0 * f1 - g1 * f0);
}

long double dirichlet_form(const FnBundle& f, const FnBundle& g, long double x, const Params& params)
{
    const Jet F = f.eval(x, 3), G = g.eval(x, 1);
    const long double f1 = F.derivative(1), f2 = F.derivative(2), f3 = F.derivative(3);
    const long double g0 = G.derivative(0), g1 = G.derivative(1);
    return -g0 * (f2 + x * f3) + g1 * x * f2 + g0 * weight_p(x, params) * f1;
}

double greens_check(const FnBundle& f, const FnBundle& g, double a, double b, const Params& params, double tol)
{
    if (!(0.0 < a && a < b))
        throw DomainError("greens_check: need 0 < a < b");
    const RealFn integrand = [&](double x) {
        const Jet F = f.eval(x, 4), G = g.eval(x, 4);
        return static_cast<double>(G.value() * apply_LM(F, x, params) - F.value() * apply_LM(G, x, params));
    };
    // large integrands are limited by rounding, not by the rule
    const QuadResult q = adaptive_quad(integrand, a, b, 0.1 * tol, EndpointSingularity::none, 4000, 1e-13);
    if (!q.converged)
        throw ConvergenceError("greens_check: quadrature did not converge", q.value);
    const long double boundary = symplectic_form(f, g, b, params) - symplectic_form(f, g, a, params);
    return static_cast<double>(std::fabs(q.value - boundary));
}

double dirichlet_check(const FnBundle& f, const FnBundle& g, double a, double b, const Params& params, double tol)
{
    if (!(0.0 < a && a < b))
        throw DomainError("dirichlet_check: need 0 < a < b");
    const RealFn integrand = [&](double x) {
        const Jet F = f.eval(x, 4), G = g.eval(x, 2);
        const long double energy = x * F.derivative(2) * G.derivative(2) + weight_p(x, params) * F.derivative(1) * G.derivative(1);
        return static_cast<double>(energy - G.value() * apply_LM(F, x, params));
    };
    // large integrands are limited by rounding, not by the rule
    const QuadResult q = adaptive_quad(integrand, a, b, 0.1 * tol, EndpointSingularity::none, 4000, 1e-13);
    if (!q.converged)
        throw ConvergenceError("dirichlet_check: quadrature did not converge", q.value);
    const long double boundary = dirichlet_form(f, g, b, params) - dirichlet_form(f, g, a, params);
    return static_cast<double>(std::fabs(q.value - boundary));
}

namespace {

// Constant term of a least-squares fit of h on x0, x0/2, ..., x0/16 to
// 1 + sum_j b_j x^{p_j} (ln x)^{q_j}.
double fit_constant(const std::function<long double(long double)>& h, double x0, const int (&powers)[4], const int (&logs)[4])
{
    constexpr int n = 5;
    using Mat = Eigen::Matrix<long double, n, n>;
    using Vec = Eigen::Matrix<long double, n, 1>;
    Mat A;
    Vec y;
    for (int i = 0; i < n; ++i) {
        const long double x = to_ld(x0) / std::pow(2.0L, i);
        const long double lx = std::log(x);
        A(i, 0) = 1.0L;
        for (int j = 0; j < 4; ++j)
            A(i, j + 1) = std::pow(x, static_cast<long double>(powers[j])) * (logs[j] ? lx : 1.0L);
        y(i) = h(x);
    }
    Vec scale;
    for (int j = 0; j < n; ++j) {
        scale(j) = A.col(j).cwiseAbs().maxCoeff();
        A.col(j) /= scale(j);
    }
    const Vec c = A.colPivHouseholderQr().solve(y);
    return static_cast<double>(c(0) / scale(0));
}

// limit of f'(x) for f = a + b x^2 ln x + c x^2 + d x^4 ln x + e x^4
double derivative_limit_at_zero(const std::function<long double(long double)>& h, double x0)
{
    return fit_constant(h, x0, {1, 1, 3, 3}, {1, 0, 1, 0});
}

} // namespace

double limit_at_zero(const std::function<long double(long double)>& h, double x0)
{
    return fit_constant(h, x0, {2, 2, 4, 4}, {1, 0, 1, 0});
}

BoundaryExtraction extract_boundary(const FnBundle& f, const Params& params)
{
    BoundaryExtraction out;
    out.data.f0 = limit_at_zero([&](long double x) { return f.eval(x, 0).value(); });
    out.data.f2 = limit_at_zero([&](long double x) { return f.eval(x, 2).derivative(2); });
    out.f1 = derivative_limit_at_zero([&](long double x) { return f.eval(x, 1).derivative(1); }, 1e-2);
    out.x_f3 = limit_at_zero([&](long double x) { return x * f.eval(x, 3).derivative(3); });
    const FnBundle one = polynomial_bundle({1.0L});
    const FnBundle x2 = polynomial_bundle({0.0L, 0.0L, 1.0L});
    out.form_with_one = limit_at_zero([&](long double x) { return symplectic_form(f, one, x, params); });
    out.form_with_x2 = limit_at_zero([&](long double x) { return symplectic_form(f, x2, x, params); });

    const double scale = std::max({1.0, std::fabs(out.data.f0), std::fabs(out.data.f2)});
    const double tol = 1e-5;
    const bool ok = std::fabs(out.f1) <= tol * scale && std::fabs(out.x_f3) <= tol * scale
                    && std::fabs(out.form_with_one + 8.0 * out.data.f2) <= tol * std::max(1.0, 8.0 * std::fabs(out.data.f2))
                    && std::fabs(out.form_with_x2 - 16.0 * out.data.f0) <= tol * std::max(1.0, 16.0 * std::fabs(out.data.f0));
    if (!ok || !std::isfinite(out.data.f0) || !std::isfinite(out.data.f2))
        throw DomainError("boundary_data: not in maximal domain");
    return out;
}

BoundaryData boundary_data(const FnBundle& f, const Params& params) { return extract_boundary(f, params).data; }

long double apply_Sk(const FnBundle& f, double k, long double x, const Params& params)
{
    if (!(k > 0.0))
        throw DomainError("apply_Sk: k must be positive");
    if (x < 0.0L)
        throw DomainError("apply_Sk: x must be >= 0");
    if (x == 0.0L) {
        const BoundaryData b = f.boundary ? *f.boundary : boundary_data(f, params);
        return -8.0L * to_ld(b.f2) / to_ld(k);
    }
    return apply_LM(f, x, params) / x;
}

double sk_inner(const FnBundle& f, double k, double a, double b, const Params& params, double tol)
{
    FnBundle g = f;
    if (!g.boundary)
        g.boundary = boundary_data(f, params);
    const long double atom = to_ld(k) * apply_Sk(g, k, 0.0L, params) * to_ld(g.boundary->f0);
    return static_cast<double>(atom) + operator_inner(f, a, b, params, tol);
}

long double apply_higher_order(int order, const FnBundle& f, long double x, const Params& params)
{
    if (order != 6 && order != 8)
        throw DomainError("apply_higher_order: order must be 6 or 8");
    if (!(x > 0.0L))
        throw DomainError("apply_higher_order: x must be positive");
    return apply_terms(bessel_type_expression(order, params), f.eval(x, order), x);
}

double dirichlet_integral(const FnBundle& f, double a, double b, const Params& params, double tol)
{
    const RealFn integrand = [&](double x) {
        const Jet F = f.eval(x, 2);
        const long double d1 = F.derivative(1), d2 = F.derivative(2);
        return static_cast<double>(x * d2 * d2 + weight_p(x, params) * d1 * d1);
    };
    const QuadResult q = adaptive_quad(integrand, a, b, tol, EndpointSingularity::none, 4000, 1e-13);
    if (!q.converged)
        throw ConvergenceError("dirichlet_integral: quadrature did not converge", q.value);
    return q.value;
}

double operator_inner(const FnBundle& f, double a, double b, const Params& params, double tol)
{
    const RealFn integrand = [&](double x) {
        if (x <= 0.0)
            return 0.0;
        const Jet F = f.eval(x, 4);
        return static_cast<double>(F.value() * apply_LM(F, x, params));
    };
    const QuadResult q = adaptive_quad(integrand, a, b, tol, EndpointSingularity::none, 4000, 1e-13);
    if (!q.converged)
        throw ConvergenceError("operator_inner: quadrature did not converge", q.value);
    return q.value;
}

} // namespace bessel4
