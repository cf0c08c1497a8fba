#include "doctest.h"

#include <cmath>

#include "bessel4/errors.hpp"
#include "bessel4/jet.hpp"
#include "bessel4/log_series.hpp"
#include "test_util.hpp"

using namespace bessel4;

TEST_CASE("log-power series derivative matches finite differences")
{
    LogPowerSeries s;
    s.add(-2, 0, 0.5L);
    s.add(0, 1, -1.25L);
    s.add(2, 0, 3.0L);
    s.add(4, 2, 0.75L);
    const LogPowerSeries d = s.derivative();
    for (double x : {0.2, 0.7, 1.5}) {
        const double fd = central_difference([&](double t) { return static_cast<double>(s.eval(t)); }, x, 1e-4);
        CHECK(static_cast<double>(d.eval(x)) == doctest::Approx(fd).epsilon(1e-8));
    }
    CHECK(s.coeff(4, 2) == 0.75L);
    CHECK(s.coeff(5, 0) == 0.0L);
    CHECK(s.min_power() == -2);
    CHECK(s.max_log_degree() == 2);
}

TEST_CASE("log-power series arithmetic and evaluation at zero")
{
    LogPowerSeries a, b;
    a.add(0, 0, 1.0L);
    a.add(2, 0, 2.0L);
    b.add(2, 0, 2.0L);
    b.add(3, 1, 1.0L);
    const LogPowerSeries c = a - b;
    CHECK(c.coeff(2, 0) == 0.0L);
    CHECK(c.eval(0.0L) == 1.0L);
    CHECK(a.shifted(-2).coeff(0, 0) == 2.0L);
    CHECK(a.scaled(3).coeff(2, 0) == 6.0L);
    LogPowerSeries sing;
    sing.add(-1, 0, 1.0L);
    CHECK_THROWS_AS(sing.eval(0.0L), DomainError);
}

TEST_CASE("jets propagate derivatives of elementary functions")
{
    const long double x0 = 0.7L;
    const Jet x = Jet::variable(x0, 8);
    const Jet f = exp(-x * x) * sin(3.0L * x) / (1.0L + x) + log(x) * sqrt(x) + pow(x, 2.5L) * cos(x);
    const auto scalar = [](double t) {
        return std::exp(-t * t) * std::sin(3 * t) / (1 + t) + std::log(t) * std::sqrt(t) + std::pow(t, 2.5) * std::cos(t);
    };
    CHECK(static_cast<double>(f.value()) == doctest::Approx(scalar(0.7)).epsilon(1e-15));
    CHECK(static_cast<double>(f.derivative(1)) == doctest::Approx(central_difference(scalar, 0.7, 1e-4)).epsilon(1e-9));
    // second derivative by differencing the first
    const auto first = [](double t) {
        const Jet j = Jet::variable(t, 1);
        const Jet g = exp(-j * j) * sin(3.0L * j) / (1.0L + j) + log(j) * sqrt(j) + pow(j, 2.5L) * cos(j);
        return static_cast<double>(g.derivative(1));
    };
    CHECK(static_cast<double>(f.derivative(2)) == doctest::Approx(central_difference(first, 0.7, 1e-4)).epsilon(1e-8));
}

TEST_CASE("jet of a polynomial has exact high derivatives")
{
    const Jet x = Jet::variable(2.0L, 8);
    const Jet p = pow(x, 6.0L) - 3.0L * pow(x, 2.0L);
    CHECK(p.derivative(6) == 720.0L);
    CHECK(p.derivative(7) == 0.0L);
    CHECK(p.derivative(2) == doctest::Approx(30.0L * 16.0L - 6.0L));
    const Jet q = 1.0L / x;
    CHECK(static_cast<double>(q.derivative(3)) == doctest::Approx(-6.0 / 16.0));
}

TEST_CASE("jet recurrences satisfy functional identities (seeded property test)")
{
    Lcg rng(12345);
    for (int trial = 0; trial < 50; ++trial) {
        const long double x0 = rng.uniform(0.2, 3.0);
        const Jet x = Jet::variable(x0, 8);
        const Jet u = x * x + 0.3L * x;
        const Jet e = exp(log(u));
        const Jet s2c2 = sin(u) * sin(u) + cos(u) * cos(u);
        const Jet r = sqrt(u) * sqrt(u);
        for (int k = 0; k <= 8; ++k) {
            CHECK(static_cast<double>(std::fabs(e.coeff(k) - u.coeff(k))) <= 1e-14 * (1 + std::fabs(static_cast<double>(u.coeff(k)))));
            CHECK(static_cast<double>(std::fabs(s2c2.coeff(k) - (k == 0 ? 1.0L : 0.0L))) <= 1e-13);
            CHECK(static_cast<double>(std::fabs(r.coeff(k) - u.coeff(k))) <= 1e-13 * (1 + std::fabs(static_cast<double>(u.coeff(k)))));
        }
    }
}
