#include "bessel4/bessel_type.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "bessel4/errors.hpp"

namespace bessel4 {

Params Params::from_M(double M)
{
    if (!(M > 0.0) || !std::isfinite(M))
        throw DomainError("Params: M must be positive and finite");
    return Params{M, 8.0 / M};
}

double lambda_to_Lambda(double lambda, const Params& params)
{
    const double l2 = lambda * lambda;
    return l2 * (l2 + 8.0 / params.M);
}

CDPair cd_params(double lambda, const Params& params)
{
    return CDPair{std::sqrt(lambda * lambda + 8.0 / params.M), 1.0 + params.M * lambda * lambda / 4.0};
}

const char* to_string(SolutionKind kind)
{
    switch (kind) {
    case SolutionKind::Jtype: return "J";
    case SolutionKind::Ytype: return "Y";
    case SolutionKind::Itype: return "I";
    case SolutionKind::Ktype: return "K";
    }
    return "?";
}

BesselCombination::BesselCombination(std::vector<BesselPiece> pieces, int series_terms)
    : pieces_(std::move(pieces))
{
    long double smax = 0.0L;
    for (const auto& p : pieces_) {
        if (p.scale < 0.0L)
            throw DomainError("BesselCombination: negative scale");
        smax = std::max(smax, p.scale);
    }
    radius_ = smax > 0.0L ? 2.0L / smax : INFINITY;

    LogPowerSeries s;
    for (const auto& p : pieces_) {
        if (p.scale == 0.0L) {
            // Z0(0) = 1 and x^{-1} Z1(0 x) = 0 for the regular families
            if (p.family == BesselFamily::Y || p.family == BesselFamily::K)
                throw DomainError("BesselCombination: Y and K need a positive scale");
            s.add(0, 0, p.a);
            continue;
        }
        s += small_argument_series(p.family, 0, p.scale, series_terms).scaled(p.a);
        s += small_argument_series(p.family, 1, p.scale, series_terms).shifted(-1).scaled(p.b);
    }
    series_[0] = s;
    for (int k = 1; k <= max_derivative; ++k)
        series_[k] = series_[k - 1].derivative();

    // d/dx [x^p Z0(sx)] = p x^{p-1} Z0 + s s0 x^p Z1
    // d/dx [x^p Z1(sx)] = (p-1) x^{p-1} Z1 + s s1 x^p Z0
    terms_.resize(pieces_.size());
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const auto& p = pieces_[i];
        const DerivativeSigns sg = derivative_signs(p.family);
        auto& t = terms_[i];
        t[0] = {{p.a, 0, 0}, {p.b, -1, 1}};
        for (int k = 1; k <= max_derivative; ++k) {
            std::vector<Term> next;
            auto push = [&next](long double c, int power, int which) {
                if (c == 0.0L)
                    return;
                for (auto& e : next)
                    if (e.power == power && e.which == which) {
                        e.coeff += c;
                        return;
                    }
                next.push_back({c, power, which});
            };
            for (const auto& e : t[k - 1]) {
                if (e.which == 0) {
                    push(e.coeff * e.power, e.power - 1, 0);
                    push(e.coeff * p.scale * sg.s0, e.power, 1);
                } else {
                    push(e.coeff * (e.power - 1), e.power - 1, 1);
                    push(e.coeff * p.scale * sg.s1, e.power, 0);
                }
            }
            t[k] = std::move(next);
        }
    }
}

bool BesselCombination::defined_at_zero() const
{
    return series_[0].empty() || series_[0].min_power() >= 0;
}

BesselCombination BesselCombination::with_series(const LogPowerSeries& series) const
{
    BesselCombination out = *this;
    out.series_[0] = series;
    for (int k = 1; k <= max_derivative; ++k)
        out.series_[k] = out.series_[k - 1].derivative();
    return out;
}

long double BesselCombination::value(long double x) const
{
    long double v;
    derivatives(x, 0, &v);
    return v;
}

void BesselCombination::derivatives(long double x, int max_order, long double* out) const
{
    if (max_order < 0 || max_order > max_derivative)
        throw DomainError("BesselCombination: derivative order must be in 0..4");
    if (x < 0.0L || std::isnan(x))
        throw DomainError("BesselCombination: negative argument");
    if (x == 0.0L && !defined_at_zero())
        throw DomainError("BesselCombination: singular at x = 0");
    if (x < radius_) {
        for (int k = 0; k <= max_order; ++k)
            out[k] = series_[k].eval(x);
        return;
    }
    for (int k = 0; k <= max_order; ++k)
        out[k] = 0.0L;
    const long double lnx = std::log(x);
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const auto& p = pieces_[i];
        const BesselPair z = bessel_pair(p.family, p.scale * x);
        for (int k = 0; k <= max_order; ++k) {
            long double acc = 0.0L;
            for (const auto& e : terms_[i][k])
                acc += e.coeff * std::exp(e.power * lnx) * (e.which == 0 ? z.z0 : z.z1);
            out[k] += acc;
        }
    }
}

Jet BesselCombination::jet(long double x, int order) const
{
    long double d[max_derivative + 1];
    derivatives(x, order, d);
    return Jet::from_derivatives(d, order);
}

SolutionHandle::SolutionHandle(SolutionKind kind, double lambda, Params params)
    : kind_(kind), lambda_(lambda), params_(params)
{
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw DomainError("SolutionHandle: lambda must be real and >= 0");
    if (!(params.M > 0.0))
        throw DomainError("SolutionHandle: M must be positive");
    const long double M = params.M;
    const long double lam = lambda;
    const long double d = 1.0L + M * lam * lam / 4.0L;
    const long double c = std::sqrt(lam * lam + 8.0L / M);
    BesselPiece piece{};
    switch (kind) {
    case SolutionKind::Jtype:
        // d J0(lx) - 2M (l/2)^2 (lx)^{-1} J1(lx)
        piece = {BesselFamily::J, lam, d, -M * lam / 2.0L};
        break;
    case SolutionKind::Ytype:
        if (lambda == 0.0)
            throw DomainError("SolutionHandle: the Y-type solution needs lambda > 0");
        piece = {BesselFamily::Y, lam, d, -M * lam / 2.0L};
        break;
    case SolutionKind::Itype:
        // -d I0(cx) + (1/2) c M x^{-1} I1(cx)
        piece = {BesselFamily::I, c, -d, c * M / 2.0L};
        break;
    case SolutionKind::Ktype:
        // d K0(cx) + (1/2) c M x^{-1} K1(cx)
        piece = {BesselFamily::K, c, d, c * M / 2.0L};
        break;
    }
    comb_ = BesselCombination({piece});
}

void SolutionHandle::check_argument(long double x) const
{
    if (std::isnan(x))
        throw DomainError("SolutionHandle: NaN argument");
    if ((kind_ == SolutionKind::Ytype || kind_ == SolutionKind::Ktype) && x <= 0.0L)
        throw DomainError("SolutionHandle: Y- and K-type solutions need x > 0");
    if (x < 0.0L)
        throw DomainError("SolutionHandle: x must be >= 0");
}

double SolutionHandle::value(double x) const
{
    check_argument(x);
    return static_cast<double>(comb_.value(x));
}

void SolutionHandle::derivs_ld(long double x, int max_order, long double* out) const
{
    check_argument(x);
    comb_.derivatives(x, max_order, out);
}

std::vector<double> SolutionHandle::derivs(double x, int max_order) const
{
    long double d[BesselCombination::max_derivative + 1];
    derivs_ld(x, max_order, d);
    return std::vector<double>(d, d + max_order + 1);
}

Jet SolutionHandle::jet(long double x, int order) const
{
    check_argument(x);
    return comb_.jet(x, order);
}

} // namespace bessel4
