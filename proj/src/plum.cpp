#include "bessel4/plum.hpp"

#include <cmath>

#include "bessel4/errors.hpp"

namespace bessel4 {

SeparatedSolution SeparatedSolution::from_handle(const SolutionHandle& h, double A, double B)
{
    return {make_bundle(h), A, B, h.params(), h.Lambda()};
}

double SeparatedSolution::angular(double theta) const { return A * std::cos(2.0 * theta) + B * std::sin(2.0 * theta); }

PlumEvaluation apply_plum(const SeparatedSolution& u, double r, double theta)
{
    if (!(r > 0.0))
        throw DomainError("apply_plum: r must be positive");
    const Jet v = u.radial.at(r, 4);
    const long double v0 = v.derivative(0), v1 = v.derivative(1), v2 = v.derivative(2), v3 = v.derivative(3),
                      v4 = v.derivative(4);
    const long double w = u.angular(theta);
    const long double w2 = -4.0L * w, w4 = 16.0L * w;
    const long double g = u.params.gamma;
    const long double rr = r;
    // lap^2 u in polar coordinates, mixed derivatives separate as v^(k) w^(m)
    const long double terms[] = {
        v4 * w,
        2.0L / rr * v3 * w,
        -1.0L / (rr * rr) * v2 * w,
        1.0L / (rr * rr * rr) * v1 * w,
        2.0L / (rr * rr) * v2 * w2,
        -2.0L / (rr * rr * rr) * v1 * w2,
        4.0L / (rr * rr * rr * rr) * v0 * w2,
        1.0L / (rr * rr * rr * rr) * v0 * w4,
        // - gamma lap u
        -g * v2 * w,
        -g / rr * v1 * w,
        -g / (rr * rr) * v0 * w2,
        // - (4 gamma / r^2) u
        -4.0L * g / (rr * rr) * v0 * w,
    };
    PlumEvaluation out;
    long double total = 0.0L, scale = 0.0L;
    for (long double t : terms) {
        total += t;
        scale += std::fabs(t);
    }
    const long double lambda_u = static_cast<long double>(u.Lambda) * v0 * w;
    out.value = static_cast<double>(total);
    out.residual = static_cast<double>(total - lambda_u);
    out.scale = static_cast<double>(scale + std::fabs(lambda_u));
    return out;
}

long double radial_expression(const FnBundle& v, const Params& params, double Lambda, long double r)
{
    if (!(r > 0.0L))
        throw DomainError("radial_expression: r must be positive");
    const Jet j = v.at(r, 4);
    const long double g = params.gamma;
    return j.derivative(4) + 2.0L / r * j.derivative(3) - (9.0L / (r * r) + g) * j.derivative(2) +
           (9.0L / (r * r * r) - g / r) * j.derivative(1) - Lambda * j.derivative(0);
}

double separation_residual(const FnBundle& v, const Params& params, double Lambda, const std::vector<double>& grid)
{
    double worst = 0.0;
    for (double r : grid) {
        const long double res = radial_expression(v, params, Lambda, r);
        const long double scale = 1.0L + std::fabs(Lambda * v.value(r));
        worst = std::max(worst, static_cast<double>(std::fabs(res) / scale));
    }
    return worst;
}

void RadialOperator::add(int order, int inverse_power, int gamma_power, double coefficient)
{
    const Key key{order, inverse_power, gamma_power};
    const double c = (terms_[key] += coefficient);
    if (c == 0.0)
        terms_.erase(key);
}

RadialOperator RadialOperator::operator+(const RadialOperator& o) const
{
    RadialOperator out = *this;
    for (const auto& [k, c] : o.terms_)
        out.add(std::get<0>(k), std::get<1>(k), std::get<2>(k), c);
    return out;
}

RadialOperator RadialOperator::operator*(double s) const
{
    RadialOperator out;
    for (const auto& [k, c] : terms_)
        out.add(std::get<0>(k), std::get<1>(k), std::get<2>(k), c * s);
    return out;
}

RadialOperator RadialOperator::compose(const RadialOperator& o) const
{
    RadialOperator out;
    for (const auto& [ka, ca] : terms_) {
        const auto [k, j, ga] = ka;
        for (const auto& [kb, cb] : o.terms_) {
            const auto [m, i, gb] = kb;
            // r^{-j} d^k (r^{-i} d^m) = r^{-j} sum_l C(k, l) (d^l r^{-i}) d^{k - l + m}
            double binomial = 1.0, falling = 1.0;
            for (int l = 0; l <= k; ++l) {
                out.add(k - l + m, j + i + l, ga + gb, ca * cb * binomial * falling);
                binomial = binomial * (k - l) / (l + 1);
                falling *= -(i + l);
            }
        }
    }
    return out;
}

bool RadialOperator::operator==(const RadialOperator& o) const
{
    for (const auto& [k, c] : terms_) {
        const auto it = o.terms_.find(k);
        const double other = it == o.terms_.end() ? 0.0 : it->second;
        if (std::fabs(c - other) > 1e-12 * (1.0 + std::fabs(c)))
            return false;
    }
    for (const auto& [k, c] : o.terms_)
        if (!terms_.count(k) && std::fabs(c) > 1e-12)
            return false;
    return true;
}

RadialOperator separated_operator(double c)
{
    // lap acting on v(r) w(theta) with w'' = -c w
    RadialOperator lap;
    lap.add(2, 0, 0, 1.0);
    lap.add(1, 1, 0, 1.0);
    lap.add(0, 2, 0, -c);
    RadialOperator minus_gamma_lap;
    for (const auto& [k, coeff] : lap.terms())
        minus_gamma_lap.add(std::get<0>(k), std::get<1>(k), std::get<2>(k) + 1, -coeff);
    RadialOperator potential;
    potential.add(0, 2, 1, -4.0);
    return lap.compose(lap) + minus_gamma_lap + potential;
}

RadialOperator radial_ode_operator()
{
    RadialOperator op;
    op.add(4, 0, 0, 1.0);
    op.add(3, 1, 0, 2.0);
    op.add(2, 2, 0, -9.0);
    op.add(2, 0, 1, -1.0);
    op.add(1, 3, 0, 9.0);
    op.add(1, 1, 1, -1.0);
    return op;
}

bool angular_criticality_check(double c)
{
    if (!(c >= 0.0))
        throw DomainError("angular_criticality_check: c must be >= 0");
    return separated_operator(c) == radial_ode_operator();
}

} // namespace bessel4
