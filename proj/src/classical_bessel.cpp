#include "bessel4/classical_bessel.hpp"

#include <cfloat>
#include <cmath>
#include <vector>

#include "bessel4/errors.hpp"

namespace bessel4 {

namespace {

constexpr long double series_eps = 1e-22L;
constexpr long double jy_series_limit = 2.0L;
constexpr long double jy_asymptotic_limit = 25.0L;
constexpr long double i_asymptotic_limit = 30.0L;
constexpr long double k_series_limit = 2.0L;

// sum_k (+-1)^k (x/2)^{2k} / (k!)^2 and sum_k (+-1)^k (x/2)^{2k+1} / (k!(k+1)!)
BesselPair regular_series(long double x, bool alternating)
{
    const long double q = x * x / 4.0L;
    const long double sgn = alternating ? -1.0L : 1.0L;
    long double t0 = 1.0L, t1 = x / 2.0L;
    long double s0 = t0, s1 = t1;
    for (int k = 1; k < 400; ++k) {
        t0 *= sgn * q / (static_cast<long double>(k) * k);
        t1 *= sgn * q / (static_cast<long double>(k) * (k + 1));
        s0 += t0;
        s1 += t1;
        if (std::fabs(t0) <= series_eps * std::fabs(s0) && std::fabs(t1) <= series_eps * std::fabs(s1))
            break;
    }
    return {s0, s1};
}

// Logarithmic parts of Y and K:
//   h0 = sum_{k>=1} (+-1)^{k+1} H_k (x/2)^{2k} / (k!)^2
//   h1 = sum_{k>=0} (+-1)^k [psi(k+1) + psi(k+2)] (x/2)^{2k+1} / (k!(k+1)!)
BesselPair log_series_parts(long double x, bool alternating)
{
    const long double q = x * x / 4.0L;
    const long double sgn = alternating ? -1.0L : 1.0L;
    long double t0 = 1.0L, t1 = x / 2.0L;
    long double harmonic = 0.0L;
    long double h0 = 0.0L;
    long double h1 = t1 * (-2.0L * euler_gamma + 1.0L);
    for (int k = 1; k < 400; ++k) {
        harmonic += 1.0L / k;
        t0 *= sgn * q / (static_cast<long double>(k) * k);
        t1 *= sgn * q / (static_cast<long double>(k) * (k + 1));
        const long double psi_sum = 2.0L * harmonic + 1.0L / (k + 1) - 2.0L * euler_gamma;
        const long double d1 = psi_sum * t1;
        h0 += (alternating ? -harmonic : harmonic) * t0;
        h1 += d1;
        if (std::fabs(t0 * harmonic) <= series_eps * std::fabs(h0) && std::fabs(d1) <= series_eps * std::fabs(h1))
            break;
    }
    return {h0, h1};
}

BesselPair j_series(long double x) { return regular_series(x, true); }
BesselPair i_series(long double x) { return regular_series(x, false); }

BesselPair y_series(long double x)
{
    const BesselPair j = j_series(x);
    const BesselPair h = log_series_parts(x, true);
    const long double lg = std::log(x / 2.0L);
    const long double y0 = (2.0L / pi_ld) * ((lg + euler_gamma) * j.z0 + h.z0);
    const long double y1 = -2.0L / (pi_ld * x) + (2.0L / pi_ld) * lg * j.z1 - h.z1 / pi_ld;
    return {y0, y1};
}

BesselPair k_series(long double x)
{
    const BesselPair i = i_series(x);
    const BesselPair h = log_series_parts(x, false);
    const long double lg = std::log(x / 2.0L);
    const long double k0 = -(lg + euler_gamma) * i.z0 + h.z0;
    const long double k1 = 1.0L / x + lg * i.z1 - 0.5L * h.z1;
    return {k0, k1};
}

// Miller backward recurrence for J_0..J_{m}; returns normalised values.
std::vector<long double> miller_j(long double x)
{
    int m = static_cast<int>(1.5L * x) + 40;
    if (m % 2)
        ++m;
    std::vector<long double> j(m + 2, 0.0L);
    j[m + 1] = 0.0L;
    j[m] = 1e-300L;
    for (int n = m; n >= 1; --n) {
        j[n - 1] = (2.0L * n / x) * j[n] - j[n + 1];
        if (std::fabs(j[n - 1]) > 1e250L) {
            for (int i = n - 1; i <= m; ++i)
                j[i] *= 1e-250L;
        }
    }
    long double norm = j[0];
    for (int k = 2; k <= m; k += 2)
        norm += 2.0L * j[k];
    for (auto& v : j)
        v /= norm;
    return j;
}

BesselPair j_miller(long double x)
{
    const auto j = miller_j(x);
    return {j[0], j[1]};
}

// Neumann series on top of Miller values:
//   (pi/2) Y0 = (ln(x/2) + g) J0 - 2 sum (-1)^k J_{2k} / k
//   (pi/2) Y1 = -J0/x + (ln(x/2) + g) J1 + sum (-1)^k (J_{2k-1} - J_{2k+1}) / k
void jy_miller(long double x, BesselPair& jp, BesselPair& yp)
{
    const auto j = miller_j(x);
    const int m = static_cast<int>(j.size()) - 2;
    const long double lg = std::log(x / 2.0L) + euler_gamma;
    long double s0 = 0.0L, s1 = 0.0L;
    for (int k = 1; 2 * k + 1 <= m + 1; ++k) {
        const long double sgn = (k % 2) ? -1.0L : 1.0L;
        s0 += sgn * j[2 * k] / k;
        s1 += sgn * (j[2 * k - 1] - j[2 * k + 1]) / k;
    }
    jp = {j[0], j[1]};
    yp = {(2.0L / pi_ld) * (lg * j[0] - 2.0L * s0), (2.0L / pi_ld) * (-j[0] / x + lg * j[1] + s1)};
}

// Hankel asymptotic P, Q for order nu at large x.
void hankel_pq(int nu, long double x, long double& p, long double& q)
{
    const long double mu = 4.0L * nu * nu;
    long double term = 1.0L;
    p = 1.0L;
    q = 0.0L;
    long double prev = 1e300L;
    for (int k = 1; k < 120; ++k) {
        const long double odd = 2.0L * k - 1.0L;
        term *= (mu - odd * odd) / (k * 8.0L * x);
        if (std::fabs(term) > prev)
            break;
        prev = std::fabs(term);
        // k odd -> Q, k even -> P; signs alternate in pairs
        const int r = k % 4;
        if (r == 1)
            q += term;
        else if (r == 2)
            p -= term;
        else if (r == 3)
            q -= term;
        else
            p += term;
        if (prev < 1e-21L)
            break;
    }
}

void jy_asymptotic(long double x, BesselPair& jp, BesselPair& yp)
{
    const long double s = std::sin(x), c = std::cos(x);
    const long double root = std::sqrt(2.0L / (pi_ld * x));
    const long double inv_sqrt2 = 0.707106781186547524400844362104849039L;
    long double p0, q0, p1, q1;
    hankel_pq(0, x, p0, q0);
    hankel_pq(1, x, p1, q1);
    // chi0 = x - pi/4, chi1 = x - 3pi/4
    const long double c0 = (c + s) * inv_sqrt2, s0 = (s - c) * inv_sqrt2;
    const long double c1 = (s - c) * inv_sqrt2, s1 = -(s + c) * inv_sqrt2;
    jp = {root * (p0 * c0 - q0 * s0), root * (p1 * c1 - q1 * s1)};
    yp = {root * (p0 * s0 + q0 * c0), root * (p1 * s1 + q1 * c1)};
}

BesselPair i_asymptotic(long double x)
{
    // I_nu ~ e^x / sqrt(2 pi x) sum (-1)^k a_k(nu) / x^k
    BesselPair out{};
    for (int nu = 0; nu <= 1; ++nu) {
        const long double mu = 4.0L * nu * nu;
        long double term = 1.0L, sum = 1.0L, prev = 1e300L;
        for (int k = 1; k < 120; ++k) {
            const long double odd = 2.0L * k - 1.0L;
            term *= -(mu - odd * odd) / (k * 8.0L * x);
            if (std::fabs(term) > prev)
                break;
            prev = std::fabs(term);
            sum += term;
            if (prev < 1e-21L)
                break;
        }
        const long double v = std::exp(x) / std::sqrt(2.0L * pi_ld * x) * sum;
        (nu == 0 ? out.z0 : out.z1) = v;
    }
    return out;
}

// Steed's method (continued fraction CF2, Temme normalisation) with mu = 0.
BesselPair k_steed(long double x)
{
    long double b = 2.0L * (1.0L + x);
    long double d = 1.0L / b;
    long double h = d, delh = d;
    long double q1 = 0.0L, q2 = 1.0L;
    const long double a1 = 0.25L;
    long double q = a1, c = a1;
    long double a = -a1;
    long double s = 1.0L + q * delh;
    for (int i = 1; i < 10000; ++i) {
        a -= 2 * i;
        c = -a * c / (i + 1.0L);
        const long double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0L;
        d = 1.0L / (b + a * d);
        delh = (b * d - 1.0L) * delh;
        h += delh;
        const long double dels = q * delh;
        s += dels;
        if (std::fabs(dels / s) < 1e-21L)
            break;
    }
    h = a1 * h;
    const long double k0 = std::sqrt(pi_ld / (2.0L * x)) * std::exp(-x) / s;
    const long double k1 = k0 * (x + 0.5L - h) / x;
    return {k0, k1};
}

void check_domain(BesselFamily family, long double x)
{
    if (std::isnan(x))
        throw DomainError("Bessel kernel: NaN argument");
    if ((family == BesselFamily::Y || family == BesselFamily::K) && x <= 0.0L)
        throw DomainError("Bessel kernel: Y and K require x > 0");
    if (x < 0.0L)
        throw DomainError("Bessel kernel: J and I require x >= 0");
}

} // namespace

BesselPair bessel_pair(BesselFamily family, long double x)
{
    check_domain(family, x);
    switch (family) {
    case BesselFamily::J: {
        if (x < jy_series_limit)
            return j_series(x);
        if (x <= jy_asymptotic_limit)
            return j_miller(x);
        BesselPair jp, yp;
        jy_asymptotic(x, jp, yp);
        return jp;
    }
    case BesselFamily::Y: {
        if (x < jy_series_limit)
            return y_series(x);
        BesselPair jp, yp;
        if (x <= jy_asymptotic_limit)
            jy_miller(x, jp, yp);
        else
            jy_asymptotic(x, jp, yp);
        return yp;
    }
    case BesselFamily::I: {
        const BesselPair r = x <= i_asymptotic_limit ? i_series(x) : i_asymptotic(x);
        if (!(std::fabs(r.z0) <= DBL_MAX) || !(std::fabs(r.z1) <= DBL_MAX))
            throw OverflowError("Bessel kernel: I overflows double precision");
        return r;
    }
    case BesselFamily::K:
        return x <= k_series_limit ? k_series(x) : k_steed(x);
    }
    throw InternalError("Bessel kernel: unknown family");
}

DerivativeSigns derivative_signs(BesselFamily family)
{
    switch (family) {
    case BesselFamily::J:
    case BesselFamily::Y:
        return {-1, 1};
    case BesselFamily::I:
        return {1, 1};
    case BesselFamily::K:
        return {-1, -1};
    }
    throw InternalError("Bessel kernel: unknown family");
}

double bessel_eval(BesselKind kind, double x)
{
    if (kind.order != 0 && kind.order != 1)
        throw DomainError("Bessel kernel: only orders 0 and 1 are supported");
    const BesselPair p = bessel_pair(kind.family, x);
    return static_cast<double>(kind.order == 0 ? p.z0 : p.z1);
}

double bessel_eval_derivative(BesselKind kind, double x)
{
    if (kind.order != 0 && kind.order != 1)
        throw DomainError("Bessel kernel: only orders 0 and 1 are supported");
    const BesselPair p = bessel_pair(kind.family, x);
    const DerivativeSigns sg = derivative_signs(kind.family);
    if (kind.order == 0)
        return static_cast<double>(sg.s0 * p.z1);
    if (x == 0.0) {
        // J1'(0) = I1'(0) = 1/2
        return 0.5;
    }
    return static_cast<double>(sg.s1 * p.z0 - p.z1 / x);
}

LogPowerSeries small_argument_series(BesselFamily family, int order, long double scale, int terms)
{
    if (order != 0 && order != 1)
        throw DomainError("small_argument_series: order must be 0 or 1");
    if (scale <= 0.0L)
        throw DomainError("small_argument_series: scale must be positive");
    const bool alternating = family == BesselFamily::J || family == BesselFamily::Y;
    const long double sgn = alternating ? -1.0L : 1.0L;
    const long double h = scale / 2.0L;
    const long double log_shift = std::log(h); // ln(scale x / 2) = ln x + log_shift

    // coefficient of x^{2k} in Z0-regular and x^{2k+1} in Z1-regular parts
    std::vector<long double> reg0(terms), reg1(terms), harm(terms), psi_sum(terms);
    long double t0 = 1.0L, t1 = h, harmonic = 0.0L;
    for (int k = 0; k < terms; ++k) {
        if (k > 0) {
            harmonic += 1.0L / k;
            t0 *= sgn * h * h / (static_cast<long double>(k) * k);
            t1 *= sgn * h * h / (static_cast<long double>(k) * (k + 1));
        }
        reg0[k] = t0;
        reg1[k] = t1;
        harm[k] = harmonic;
        psi_sum[k] = 2.0L * harmonic + 1.0L / (k + 1) - 2.0L * euler_gamma;
    }

    LogPowerSeries s;
    switch (family) {
    case BesselFamily::J:
    case BesselFamily::I:
        for (int k = 0; k < terms; ++k) {
            if (order == 0)
                s.add(2 * k, 0, reg0[k]);
            else
                s.add(2 * k + 1, 0, reg1[k]);
        }
        break;
    case BesselFamily::Y:
        if (order == 0) {
            // (2/pi)(ln(sx/2) + g) J0 + (2/pi) sum (-1)^{k+1} H_k (sx/2)^{2k}/(k!)^2
            for (int k = 0; k < terms; ++k) {
                s.add(2 * k, 1, (2.0L / pi_ld) * reg0[k]);
                s.add(2 * k, 0, (2.0L / pi_ld) * ((log_shift + euler_gamma) * reg0[k] - harm[k] * reg0[k]));
            }
        } else {
            // -2/(pi s x) + (2/pi) ln(sx/2) J1 - (1/pi) sum (-1)^k psi_sum (sx/2)^{2k+1}/(k!(k+1)!)
            s.add(-1, 0, -2.0L / (pi_ld * scale));
            for (int k = 0; k < terms; ++k) {
                s.add(2 * k + 1, 1, (2.0L / pi_ld) * reg1[k]);
                s.add(2 * k + 1, 0, (2.0L / pi_ld) * log_shift * reg1[k] - psi_sum[k] * reg1[k] / pi_ld);
            }
        }
        break;
    case BesselFamily::K:
        if (order == 0) {
            // -(ln(sx/2) + g) I0 + sum H_k (sx/2)^{2k}/(k!)^2
            for (int k = 0; k < terms; ++k) {
                s.add(2 * k, 1, -reg0[k]);
                s.add(2 * k, 0, -(log_shift + euler_gamma) * reg0[k] + harm[k] * reg0[k]);
            }
        } else {
            // 1/(sx) + ln(sx/2) I1 - (1/2) sum psi_sum (sx/2)^{2k+1}/(k!(k+1)!)
            s.add(-1, 0, 1.0L / scale);
            for (int k = 0; k < terms; ++k) {
                s.add(2 * k + 1, 1, reg1[k]);
                s.add(2 * k + 1, 0, log_shift * reg1[k] - 0.5L * psi_sum[k] * reg1[k]);
            }
        }
        break;
    }
    return s;
}

} // namespace bessel4
