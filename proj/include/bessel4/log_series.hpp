#pragma once

#include <vector>

namespace bessel4 {

/// Finite sum  sum_{p,q} c[p,q] x^p (ln x)^q  with integer (possibly negative)
/// powers p and log degrees q >= 0, held in extended precision.
///
/// This is the common currency for small-argument expansions: classical
/// Bessel series, the fourth-order solution family near the origin and
/// Frobenius solutions with logarithmic blocks. Differentiation is exact.
class LogPowerSeries {
public:
    LogPowerSeries() = default;

    void add(int power, int log_degree, long double coeff);
    long double coeff(int power, int log_degree) const;

    bool empty() const { return terms_.empty(); }
    int min_power() const { return pmin_; }
    int max_power() const { return pmin_ + width_ - 1; }
    int max_log_degree() const { return static_cast<int>(terms_.size()) - 1; }

    /// Drops coefficients with |c| <= threshold (used after cancellations that
    /// are known to be exact in exact arithmetic).
    void zero_small(long double threshold);
    void set(int power, int log_degree, long double coeff);

    LogPowerSeries derivative() const;
    /// Multiplies by x^k.
    LogPowerSeries shifted(int k) const;
    LogPowerSeries scaled(long double s) const;

    LogPowerSeries& operator+=(const LogPowerSeries& other);
    LogPowerSeries& operator-=(const LogPowerSeries& other);

    /// Evaluates at x > 0 (x = 0 allowed when no negative powers or logs).
    long double eval(long double x) const;

private:
    void ensure(int power, int log_degree);

    int pmin_ = 0;
    int width_ = 0;
    // terms_[q][p - pmin_]
    std::vector<std::vector<long double>> terms_;
};

LogPowerSeries operator+(LogPowerSeries a, const LogPowerSeries& b);
LogPowerSeries operator-(LogPowerSeries a, const LogPowerSeries& b);

} // namespace bessel4
