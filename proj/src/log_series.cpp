#include "bessel4/log_series.hpp"

#include <algorithm>
#include <cmath>

#include "bessel4/errors.hpp"

namespace bessel4 {

void LogPowerSeries::ensure(int power, int log_degree)
{
    if (log_degree < 0)
        throw InternalError("LogPowerSeries: negative log degree");
    if (width_ == 0) {
        pmin_ = power;
        width_ = 1;
    }
    if (power < pmin_) {
        const int grow = pmin_ - power;
        for (auto& row : terms_)
            row.insert(row.begin(), grow, 0.0L);
        pmin_ = power;
        width_ += grow;
    }
    if (power > pmin_ + width_ - 1) {
        width_ = power - pmin_ + 1;
    }
    if (static_cast<int>(terms_.size()) <= log_degree)
        terms_.resize(log_degree + 1);
    for (auto& row : terms_)
        row.resize(width_, 0.0L);
}

void LogPowerSeries::add(int power, int log_degree, long double coeff)
{
    if (coeff == 0.0L)
        return;
    ensure(power, log_degree);
    terms_[log_degree][power - pmin_] += coeff;
}

void LogPowerSeries::set(int power, int log_degree, long double coeff)
{
    ensure(power, log_degree);
    terms_[log_degree][power - pmin_] = coeff;
}

long double LogPowerSeries::coeff(int power, int log_degree) const
{
    if (log_degree < 0 || log_degree >= static_cast<int>(terms_.size()))
        return 0.0L;
    if (power < pmin_ || power >= pmin_ + width_)
        return 0.0L;
    return terms_[log_degree][power - pmin_];
}

void LogPowerSeries::zero_small(long double threshold)
{
    for (auto& row : terms_)
        for (auto& c : row)
            if (std::fabs(c) <= threshold)
                c = 0.0L;
}

LogPowerSeries LogPowerSeries::derivative() const
{
    // d/dx [x^p ln^q x] = p x^{p-1} ln^q x + q x^{p-1} ln^{q-1} x
    LogPowerSeries out;
    for (int q = 0; q < static_cast<int>(terms_.size()); ++q) {
        for (int i = 0; i < width_; ++i) {
            const long double c = terms_[q][i];
            if (c == 0.0L)
                continue;
            const int p = pmin_ + i;
            if (p != 0)
                out.add(p - 1, q, c * p);
            if (q > 0)
                out.add(p - 1, q - 1, c * q);
        }
    }
    return out;
}

LogPowerSeries LogPowerSeries::shifted(int k) const
{
    LogPowerSeries out = *this;
    out.pmin_ += k;
    return out;
}

LogPowerSeries LogPowerSeries::scaled(long double s) const
{
    LogPowerSeries out = *this;
    for (auto& row : out.terms_)
        for (auto& c : row)
            c *= s;
    return out;
}

LogPowerSeries& LogPowerSeries::operator+=(const LogPowerSeries& other)
{
    for (int q = 0; q < static_cast<int>(other.terms_.size()); ++q)
        for (int i = 0; i < other.width_; ++i)
            add(other.pmin_ + i, q, other.terms_[q][i]);
    return *this;
}

LogPowerSeries& LogPowerSeries::operator-=(const LogPowerSeries& other)
{
    for (int q = 0; q < static_cast<int>(other.terms_.size()); ++q)
        for (int i = 0; i < other.width_; ++i)
            add(other.pmin_ + i, q, -other.terms_[q][i]);
    return *this;
}

long double LogPowerSeries::eval(long double x) const
{
    if (terms_.empty())
        return 0.0L;
    if (x <= 0.0L) {
        if (x == 0.0L && pmin_ >= 0) {
            long double at_zero = 0.0L;
            for (int i = 0; i < width_; ++i)
                if (pmin_ + i == 0)
                    at_zero = terms_[0][i];
            for (std::size_t q = 1; q < terms_.size(); ++q)
                for (int i = 0; i < width_; ++i)
                    if (terms_[q][i] != 0.0L && pmin_ + i == 0)
                        throw DomainError("LogPowerSeries: log term at x = 0");
            return at_zero;
        }
        throw DomainError("LogPowerSeries: evaluation requires x > 0");
    }
    const long double lnx = std::log(x);
    const long double lead = std::pow(x, static_cast<long double>(pmin_));
    long double total = 0.0L;
    long double logpow = 1.0L;
    for (const auto& row : terms_) {
        long double acc = 0.0L;
        for (int i = width_ - 1; i >= 0; --i)
            acc = acc * x + row[i];
        total += logpow * acc;
        logpow *= lnx;
    }
    return total * lead;
}

LogPowerSeries operator+(LogPowerSeries a, const LogPowerSeries& b)
{
    a += b;
    return a;
}

LogPowerSeries operator-(LogPowerSeries a, const LogPowerSeries& b)
{
    a -= b;
    return a;
}

} // namespace bessel4
