#include "bessel4/jet.hpp"

#include <algorithm>
#include <cmath>

#include "bessel4/errors.hpp"

namespace bessel4 {

Jet::Jet(long double value, int order) : order_(order)
{
    if (order < 0 || order > max_order)
        throw DomainError("Jet: order out of range");
    c_[0] = value;
}

Jet Jet::variable(long double x0, int order)
{
    Jet j(x0, order);
    if (order >= 1)
        j.c_[1] = 1.0L;
    return j;
}

Jet Jet::from_derivatives(const long double* derivs, int order)
{
    Jet j(derivs[0], order);
    long double fact = 1.0L;
    for (int k = 1; k <= order; ++k) {
        fact *= k;
        j.c_[k] = derivs[k] / fact;
    }
    return j;
}

long double Jet::derivative(int k) const
{
    if (k > order_)
        throw DomainError("Jet: derivative beyond truncation order");
    long double fact = 1.0L;
    for (int i = 2; i <= k; ++i)
        fact *= i;
    return c_[k] * fact;
}

Jet& Jet::operator+=(const Jet& o)
{
    order_ = std::min(order_, o.order_);
    for (int k = 0; k <= order_; ++k)
        c_[k] += o.c_[k];
    return *this;
}

Jet& Jet::operator-=(const Jet& o)
{
    order_ = std::min(order_, o.order_);
    for (int k = 0; k <= order_; ++k)
        c_[k] -= o.c_[k];
    return *this;
}

Jet& Jet::operator*=(const Jet& o)
{
    const int n = std::min(order_, o.order_);
    std::array<long double, max_order + 1> r{};
    for (int k = 0; k <= n; ++k)
        for (int i = 0; i <= k; ++i)
            r[k] += c_[i] * o.c_[k - i];
    c_ = r;
    order_ = n;
    return *this;
}

Jet& Jet::operator/=(const Jet& o)
{
    if (o.c_[0] == 0.0L)
        throw DomainError("Jet: division by a jet with zero value");
    const int n = std::min(order_, o.order_);
    std::array<long double, max_order + 1> r{};
    for (int k = 0; k <= n; ++k) {
        long double s = c_[k];
        for (int i = 1; i <= k; ++i)
            s -= o.c_[i] * r[k - i];
        r[k] = s / o.c_[0];
    }
    c_ = r;
    order_ = n;
    return *this;
}

Jet& Jet::operator*=(long double s)
{
    for (int k = 0; k <= order_; ++k)
        c_[k] *= s;
    return *this;
}

Jet Jet::operator-() const
{
    Jet r = *this;
    r *= -1.0L;
    return r;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }
Jet operator*(Jet a, const Jet& b) { return a *= b; }
Jet operator/(Jet a, const Jet& b) { return a /= b; }
Jet operator*(Jet a, long double s) { return a *= s; }
Jet operator*(long double s, Jet a) { return a *= s; }

Jet operator+(Jet a, long double s)
{
    a.coeff(0) += s;
    return a;
}

Jet operator+(long double s, Jet a) { return a + s; }

Jet operator-(Jet a, long double s)
{
    a.coeff(0) -= s;
    return a;
}

Jet operator-(long double s, const Jet& a) { return (-a) + s; }

Jet operator/(long double s, const Jet& a) { return Jet(s, a.order()) / a; }

Jet exp(const Jet& a)
{
    Jet e(std::exp(a.value()), a.order());
    for (int k = 1; k <= a.order(); ++k) {
        long double s = 0.0L;
        for (int i = 1; i <= k; ++i)
            s += i * a.coeff(i) * e.coeff(k - i);
        e.coeff(k) = s / k;
    }
    return e;
}

Jet log(const Jet& a)
{
    const long double a0 = a.value();
    if (a0 <= 0.0L)
        throw DomainError("log: argument must be positive");
    Jet l(std::log(a0), a.order());
    for (int k = 1; k <= a.order(); ++k) {
        long double s = a.coeff(k);
        for (int i = 1; i < k; ++i)
            s -= static_cast<long double>(i) / k * l.coeff(i) * a.coeff(k - i);
        l.coeff(k) = s / a0;
    }
    return l;
}

namespace {

void sin_cos(const Jet& a, Jet& s, Jet& c)
{
    s = Jet(std::sin(a.value()), a.order());
    c = Jet(std::cos(a.value()), a.order());
    for (int k = 1; k <= a.order(); ++k) {
        long double ss = 0.0L, cc = 0.0L;
        for (int i = 1; i <= k; ++i) {
            ss += i * a.coeff(i) * c.coeff(k - i);
            cc -= i * a.coeff(i) * s.coeff(k - i);
        }
        s.coeff(k) = ss / k;
        c.coeff(k) = cc / k;
    }
}

} // namespace

Jet sin(const Jet& a)
{
    Jet s, c;
    sin_cos(a, s, c);
    return s;
}

Jet cos(const Jet& a)
{
    Jet s, c;
    sin_cos(a, s, c);
    return c;
}

Jet sqrt(const Jet& a) { return pow(a, 0.5L); }

Jet pow(const Jet& a, long double r)
{
    const long double ri = std::round(r);
    if (ri == r && std::fabs(r) <= 64.0L) {
        const int n = static_cast<int>(ri);
        Jet result(1.0L, a.order());
        Jet base = a;
        int m = n < 0 ? -n : n;
        while (m > 0) {
            if (m & 1)
                result *= base;
            m >>= 1;
            if (m > 0)
                base *= base;
        }
        return n < 0 ? 1.0L / result : result;
    }
    const long double a0 = a.value();
    if (a0 <= 0.0L)
        throw DomainError("pow: non-integer power of a non-positive value");
    Jet p(std::pow(a0, r), a.order());
    for (int k = 1; k <= a.order(); ++k) {
        long double s = 0.0L;
        for (int i = 1; i <= k; ++i)
            s += ((r + 1.0L) * i - k) * a.coeff(i) * p.coeff(k - i);
        p.coeff(k) = s / (k * a0);
    }
    return p;
}

Jet pow(const Jet& a, const Jet& b)
{
    bool constant_exponent = true;
    for (int k = 1; k <= b.order(); ++k)
        if (b.coeff(k) != 0.0L)
            constant_exponent = false;
    if (constant_exponent) {
        Jet r = pow(a, b.value());
        if (b.order() < r.order()) {
            Jet t(r.value(), b.order());
            for (int k = 1; k <= b.order(); ++k)
                t.coeff(k) = r.coeff(k);
            return t;
        }
        return r;
    }
    return exp(b * log(a));
}

} // namespace bessel4
