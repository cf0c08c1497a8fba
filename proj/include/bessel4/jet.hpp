#pragma once

#include <array>

namespace bessel4 {

/// Truncated Taylor expansion  sum_k c_k (t - x0)^k , k = 0..order, in
/// extended precision. Arithmetic propagates derivatives exactly, which is
/// how test functions given as expressions get their derivatives up to the
/// eighth order without finite differences.
class Jet {
public:
    static constexpr int max_order = 8;

    Jet() = default;
    Jet(long double value, int order);

    /// The independent variable at x0.
    static Jet variable(long double x0, int order);
    /// Builds a jet from derivative values f, f', f'', ...
    static Jet from_derivatives(const long double* derivs, int order);

    int order() const { return order_; }
    long double value() const { return c_[0]; }
    long double coeff(int k) const { return c_[k]; }
    long double& coeff(int k) { return c_[k]; }
    /// k-th derivative, k! c_k.
    long double derivative(int k) const;

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(const Jet& o);
    Jet& operator/=(const Jet& o);
    Jet& operator*=(long double s);
    Jet operator-() const;

private:
    int order_ = 0;
    std::array<long double, max_order + 1> c_{};
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator*(Jet a, const Jet& b);
Jet operator/(Jet a, const Jet& b);
Jet operator*(Jet a, long double s);
Jet operator*(long double s, Jet a);
Jet operator+(Jet a, long double s);
Jet operator+(long double s, Jet a);
Jet operator-(Jet a, long double s);
Jet operator-(long double s, const Jet& a);
Jet operator/(long double s, const Jet& a);

Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet sqrt(const Jet& a);
/// a^r for real r (requires a.value() > 0 unless r is a small integer).
Jet pow(const Jet& a, long double r);
Jet pow(const Jet& a, const Jet& b);

} // namespace bessel4
