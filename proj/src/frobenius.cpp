#include "bessel4/frobenius.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>

#include "bessel4/errors.hpp"

namespace bessel4 {

namespace {

long double falling(long double p, int n)
{
    long double r = 1.0L;
    for (int i = 0; i < n; ++i)
        r *= p - i;
    return r;
}

long double binomial(int n, int k)
{
    long double r = 1.0L;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

// (c x^p y^(q))^(n) = sum_k C(n,k) (p)_{n-k} c x^{p-n+k} y^(q+k)
void push_lagrange(std::vector<LaurentTerm>& out, long double c, int p, int q, int n)
{
    for (int k = 0; k <= n; ++k) {
        const long double coeff = binomial(n, k) * falling(p, n - k) * c;
        if (coeff == 0.0L)
            continue;
        out.push_back({q + k, p - n + k, coeff});
    }
}

std::vector<LaurentTerm> merge(const std::vector<LaurentTerm>& terms)
{
    std::map<std::pair<int, int>, long double> acc;
    for (const auto& t : terms)
        acc[{t.deriv, t.power}] += t.coeff;
    std::vector<LaurentTerm> out;
    for (const auto& [key, c] : acc)
        if (c != 0.0L)
            out.push_back({key.first, key.second, c});
    return out;
}

// Polynomial in rho, lowest degree first.
using Poly = std::vector<long double>;

Poly falling_poly(int n)
{
    Poly p{1.0L};
    for (int i = 0; i < n; ++i) {
        Poly next(p.size() + 1, 0.0L);
        for (std::size_t j = 0; j < p.size(); ++j) {
            next[j + 1] += p[j];
            next[j] -= i * p[j];
        }
        p = next;
    }
    return p;
}

long double poly_eval_derivative(const Poly& p, long double x, int order)
{
    long double r = 0.0L;
    for (int j = static_cast<int>(p.size()) - 1; j >= order; --j)
        r = r * x + p[j] * falling(j, order);
    return r;
}

// P_s(rho) for every shift s = power - deriv present in the spec.
std::map<int, Poly> shift_polynomials(const OdeSpec& spec)
{
    std::map<int, Poly> polys;
    for (const auto& t : spec.terms) {
        const int s = t.power - t.deriv;
        Poly& p = polys[s];
        const Poly f = falling_poly(t.deriv);
        if (p.size() < f.size())
            p.resize(f.size(), 0.0L);
        for (std::size_t j = 0; j < f.size(); ++j)
            p[j] += t.coeff * f[j];
    }
    return polys;
}

} // namespace

std::vector<LaurentTerm> bessel_type_expression(int order, const Params& params)
{
    const long double invM = 1.0L / params.M;
    std::vector<LaurentTerm> raw;
    switch (order) {
    case 4:
        push_lagrange(raw, 1.0L, 1, 2, 2);
        push_lagrange(raw, -9.0L, -1, 1, 1);
        push_lagrange(raw, -8.0L * invM, 1, 1, 1);
        break;
    case 6:
        push_lagrange(raw, -1.0L, 3, 3, 3);
        push_lagrange(raw, 33.0L, 1, 2, 2);
        push_lagrange(raw, -225.0L, -1, 1, 1);
        push_lagrange(raw, -96.0L * invM, 3, 1, 1);
        break;
    case 8:
        push_lagrange(raw, 1.0L, 5, 4, 4);
        push_lagrange(raw, -78.0L, 3, 3, 3);
        push_lagrange(raw, 1809.0L, 1, 2, 2);
        push_lagrange(raw, -11025.0L, -1, 1, 1);
        push_lagrange(raw, -1536.0L * invM, 5, 1, 1);
        break;
    default:
        throw DomainError("bessel_type_expression: order must be 4, 6 or 8");
    }
    return merge(raw);
}

int bessel_type_weight_power(int order)
{
    switch (order) {
    case 4: return 1;
    case 6: return 3;
    case 8: return 5;
    default: throw DomainError("bessel_type_weight_power: order must be 4, 6 or 8");
    }
}

long double apply_terms(const std::vector<LaurentTerm>& terms, const Jet& f, long double x)
{
    long double r = 0.0L;
    for (const auto& t : terms)
        r += t.coeff * std::pow(x, static_cast<long double>(t.power)) * f.derivative(t.deriv);
    return r;
}

OdeSpec OdeSpec::bessel_type(int order, const Params& params, double Lambda)
{
    OdeSpec spec;
    spec.order = order;
    spec.params = params;
    spec.Lambda = Lambda;
    if (order == 4) {
        const long double invM = 1.0L / params.M;
        spec.terms = {{4, 0, 1.0L},          {3, -1, 2.0L},         {2, -2, -9.0L}, {2, 0, -8.0L * invM},
                      {1, -3, 9.0L},         {1, -1, -8.0L * invM}, {0, 0, -static_cast<long double>(Lambda)}};
        return spec;
    }
    spec.terms = bessel_type_expression(order, params);
    spec.terms.push_back({0, bessel_type_weight_power(order), -static_cast<long double>(Lambda)});
    spec.terms = merge(spec.terms);
    return spec;
}

std::vector<int> indicial_roots(const OdeSpec& spec)
{
    const auto polys = shift_polynomials(spec);
    if (polys.empty())
        throw DomainError("indicial_roots: empty equation");
    Poly p = polys.begin()->second;
    while (!p.empty() && p.back() == 0.0L)
        p.pop_back();
    if (p.size() < 2)
        throw DomainError("indicial_roots: indicial polynomial is constant or zero");

    std::vector<std::int64_t> c;
    for (long double v : p) {
        const long double r = std::round(v);
        if (std::fabs(v - r) > 1e-9L * std::max(1.0L, std::fabs(v)))
            throw DomainError("indicial_roots: indicial polynomial has non-integer coefficients");
        c.push_back(static_cast<std::int64_t>(r));
    }

    std::vector<int> roots;
    auto deflate = [&c](std::int64_t r) {
        // synthetic division by (rho - r)
        const int n = static_cast<int>(c.size()) - 1;
        std::vector<std::int64_t> q(n);
        q[n - 1] = c[n];
        for (int j = n - 1; j >= 1; --j)
            q[j - 1] = c[j] + r * q[j];
        c = q;
    };
    auto value_at = [&c](std::int64_t r) {
        std::int64_t v = 0;
        for (int j = static_cast<int>(c.size()) - 1; j >= 0; --j)
            v = v * r + c[j];
        return v;
    };
    while (c.size() > 1) {
        if (c[0] == 0) {
            roots.push_back(0);
            c.erase(c.begin());
            continue;
        }
        const std::int64_t c0 = c[0] < 0 ? -c[0] : c[0];
        bool found = false;
        for (std::int64_t d = 1; d <= c0 && !found; ++d) {
            if (c0 % d)
                continue;
            for (std::int64_t r : {d, -d}) {
                if (value_at(r) == 0) {
                    roots.push_back(static_cast<int>(r));
                    deflate(r);
                    found = true;
                    break;
                }
            }
        }
        if (!found)
            throw DomainError("indicial_roots: indicial polynomial has non-integer roots");
    }
    std::sort(roots.begin(), roots.end(), std::greater<int>());
    return roots;
}

LogPowerSeries FrobeniusSeries::to_log_series() const
{
    LogPowerSeries s;
    for (std::size_t n = 0; n < coeffs.size(); ++n)
        s.add(root + static_cast<int>(n), 0, coeffs[n]);
    for (const auto& b : log_blocks)
        s.add(b.power, b.log_degree, b.coeff);
    return s;
}

Jet FrobeniusSeries::jet(long double x, int order) const
{
    LogPowerSeries s = to_log_series();
    long double d[Jet::max_order + 1];
    for (int k = 0; k <= order; ++k) {
        d[k] = s.eval(x);
        s = s.derivative();
    }
    return Jet::from_derivatives(d, order);
}

FrobeniusSeries frobenius_solution(const OdeSpec& spec, int root, int N)
{
    if (N < 0)
        throw DomainError("frobenius_solution: N must be >= 0");
    const auto polys = shift_polynomials(spec);
    const int smin = polys.begin()->first;
    const Poly& P0 = polys.begin()->second;
    const auto roots = indicial_roots(spec);
    if (std::find(roots.begin(), roots.end(), root) == roots.end())
        throw DomainError("frobenius_solution: not an indicial root");

    // c[q][n]: coefficient of x^{root+n} ln^q x
    std::vector<std::vector<long double>> c(1, std::vector<long double>(N + 1, 0.0L));
    c[0][0] = 1.0L;
    int qmax = 0;

    for (int n = 1; n <= N; ++n) {
        const long double rho = root + n;
        // R[l]: known part of the coefficient of x^{root+n+smin} ln^l x
        std::vector<long double> R(qmax + 1, 0.0L);
        for (const auto& [s, P] : polys) {
            const int j = s - smin;
            if (j == 0 || j > n)
                continue;
            const long double r = root + n - j;
            for (int q = 0; q <= qmax; ++q) {
                const long double cq = c[q][n - j];
                if (cq == 0.0L)
                    continue;
                for (int i = 0; i <= q; ++i)
                    R[q - i] += binomial(q, i) * poly_eval_derivative(P, r, i) * cq;
            }
        }
        const bool resonant = std::find(roots.begin(), roots.end(), static_cast<int>(rho)) != roots.end();
        if (!resonant) {
            const long double p0 = poly_eval_derivative(P0, rho, 0);
            for (int l = qmax; l >= 0; --l) {
                long double rhs = -R[l];
                for (int q = l + 1; q <= qmax; ++q)
                    rhs -= binomial(q, q - l) * poly_eval_derivative(P0, rho, q - l) * c[q][n];
                c[l][n] = rhs / p0;
            }
            continue;
        }
        const long double p1 = poly_eval_derivative(P0, rho, 1);
        if (p1 == 0.0L)
            throw InternalError("frobenius_solution: repeated indicial root");
        const int top = qmax;
        if (R[qmax] != 0.0L) {
            c.emplace_back(N + 1, 0.0L);
            ++qmax;
        }
        // equation l: sum_{q>=l+1} C(q, q-l) P0^{(q-l)}(rho) c[q][n] = -R[l]
        for (int l = qmax - 1; l >= 0; --l) {
            long double rhs = l <= top ? -R[l] : 0.0L;
            for (int q = l + 2; q <= qmax; ++q)
                rhs -= binomial(q, q - l) * poly_eval_derivative(P0, rho, q - l) * c[q][n];
            c[l + 1][n] = rhs / ((l + 1) * p1);
        }
        c[0][n] = 0.0L;
        for (int l = 0; l <= top; ++l) {
            long double lhs = R[l], scale = std::fabs(R[l]);
            for (int q = l; q <= qmax; ++q) {
                const long double t = binomial(q, q - l) * poly_eval_derivative(P0, rho, q - l) * c[q][n];
                lhs += t;
                scale += std::fabs(t);
            }
            if (std::fabs(lhs) > 1e-14L * scale)
                throw InternalError("frobenius_solution: inconsistent resonance system");
        }
    }

    FrobeniusSeries out;
    out.root = root;
    out.N = N;
    out.coeffs = c[0];
    for (int q = 1; q <= qmax; ++q)
        for (int n = 0; n <= N; ++n)
            if (c[q][n] != 0.0L)
                out.log_blocks.push_back({root + n, q, c[q][n]});
    return out;
}

FrobeniusSeries y4_series(double Lambda, const Params& params, int N)
{
    if (N < 8)
        throw DomainError("y4_series: N must be >= 8");
    return frobenius_solution(OdeSpec::bessel_type(4, params, Lambda), 4, N);
}

std::vector<FrobeniusSeries> log_case_basis(double Lambda, const Params& params, int N)
{
    if (N < 8)
        throw DomainError("log_case_basis: N must be >= 8");
    const OdeSpec spec = OdeSpec::bessel_type(4, params, Lambda);
    return {frobenius_solution(spec, 2, N), frobenius_solution(spec, 0, N), frobenius_solution(spec, -2, N)};
}

} // namespace bessel4
