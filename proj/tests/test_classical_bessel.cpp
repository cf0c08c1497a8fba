#include "doctest.h"

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <vector>

#include "bessel4/classical_bessel.hpp"
#include "bessel4/errors.hpp"
#include "test_util.hpp"

using namespace bessel4;

namespace {

long double reference(BesselKind k, long double x)
{
    using namespace boost::math;
    switch (k.family) {
    case BesselFamily::J: return cyl_bessel_j(k.order, x);
    case BesselFamily::Y: return cyl_neumann(k.order, x);
    case BesselFamily::I: return cyl_bessel_i(k.order, x);
    case BesselFamily::K: return cyl_bessel_k(k.order, x);
    }
    return 0;
}

// Maclaurin series of J0, summed to exhaustion, as an independent oracle.
double j0_maclaurin(double x)
{
    long double term = 1, sum = 1, q = static_cast<long double>(x) * x / 4;
    for (int k = 1; k < 80; ++k) {
        term *= -q / (static_cast<long double>(k) * k);
        sum += term;
    }
    return static_cast<double>(sum);
}

} // namespace

TEST_CASE("kernel values at the origin")
{
    CHECK(bessel_eval({BesselFamily::J, 0}, 0.0) == 1.0);
    CHECK(bessel_eval({BesselFamily::J, 1}, 0.0) == 0.0);
    CHECK(bessel_eval({BesselFamily::I, 0}, 0.0) == 1.0);
    CHECK(bessel_eval({BesselFamily::I, 1}, 0.0) == 0.0);
}

TEST_CASE("first zero of J0 against a bisected Maclaurin oracle")
{
    double lo = 2, hi = 3;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (j0_maclaurin(lo) * j0_maclaurin(mid) <= 0 ? hi : lo) = mid;
    }
    CHECK(std::fabs(lo - 2.404825557695773) < 1e-12);
    CHECK(std::fabs(bessel_eval({BesselFamily::J, 0}, 2.404825557695773)) < 1e-10);
}

TEST_CASE("kernels match reference values")
{
    const BesselFamily families[] = {BesselFamily::J, BesselFamily::Y, BesselFamily::I, BesselFamily::K};
    for (auto fam : families) {
        for (int order = 0; order <= 1; ++order) {
            const BesselKind kind{fam, order};
            double worst_small = 0, worst_large = 0;
            for (double x : log_grid(1e-4, 200.0, 997)) {
                const long double ref = reference(kind, x);
                const double got = bessel_eval(kind, x);
                // scale by the local envelope so zeros of J/Y do not demand infinite relative accuracy
                long double scale = std::fabs(ref);
                if (fam == BesselFamily::J || fam == BesselFamily::Y)
                    scale = std::max<long double>(scale, 1e-4L / std::sqrt(1.0L + x));
                const double err = static_cast<double>(std::fabs(got - ref) / scale);
                (x <= 20 ? worst_small : worst_large) = std::max(x <= 20 ? worst_small : worst_large, err);
            }
            INFO("family ", static_cast<int>(fam), " order ", order);
            CHECK(worst_small <= 1e-12);
            CHECK(worst_large <= 1e-10);
        }
    }
}

TEST_CASE("derivative recurrences")
{
    CHECK(bessel_eval_derivative({BesselFamily::J, 0}, 1.0) == doctest::Approx(-bessel_eval({BesselFamily::J, 1}, 1.0)).epsilon(1e-15));
    CHECK(bessel_eval_derivative({BesselFamily::I, 0}, 1.0) == doctest::Approx(bessel_eval({BesselFamily::I, 1}, 1.0)).epsilon(1e-15));

    const double h = 1e-4;
    const BesselFamily families[] = {BesselFamily::J, BesselFamily::Y, BesselFamily::I, BesselFamily::K};
    for (auto fam : families) {
        for (int order = 0; order <= 1; ++order) {
            const BesselKind kind{fam, order};
            for (double x : {0.3, 1.0, 2.0, 7.5, 24.0, 40.0}) {
                const double fd = (-bessel_eval(kind, x + 2 * h) + 8 * bessel_eval(kind, x + h) - 8 * bessel_eval(kind, x - h)
                                   + bessel_eval(kind, x - 2 * h)) / (12 * h);
                const double an = bessel_eval_derivative(kind, x);
                INFO("family ", static_cast<int>(fam), " order ", order, " x ", x);
                CHECK(std::fabs(fd - an) <= 1e-7 * std::max(std::fabs(an), 1e-3));
            }
        }
    }
    const double k0p = bessel_eval_derivative({BesselFamily::K, 0}, 2.0);
    CHECK(k0p == doctest::Approx(-bessel_eval({BesselFamily::K, 1}, 2.0)).epsilon(1e-15));
}

TEST_CASE("Wronskian of J0 and Y0")
{
    for (double x : log_grid(1e-3, 50.0, 60)) {
        const double w = bessel_eval({BesselFamily::J, 0}, x) * bessel_eval_derivative({BesselFamily::Y, 0}, x)
                         - bessel_eval({BesselFamily::Y, 0}, x) * bessel_eval_derivative({BesselFamily::J, 0}, x);
        const double expect = 2.0 / (M_PI * x);
        CHECK(std::fabs(w - expect) <= 1e-10 * expect);
    }
}

TEST_CASE("Bessel equation residuals")
{
    const BesselFamily families[] = {BesselFamily::J, BesselFamily::Y, BesselFamily::I, BesselFamily::K};
    for (auto fam : families) {
        const double sign = (fam == BesselFamily::I || fam == BesselFamily::K) ? -1.0 : 1.0;
        const DerivativeSigns sg = derivative_signs(fam);
        for (int n = 0; n <= 1; ++n) {
            for (double x : log_grid(1e-3, 50.0, 60)) {
                const BesselPair p = bessel_pair(fam, x);
                long double u, du, ddu;
                if (n == 0) {
                    u = p.z0;
                    du = sg.s0 * p.z1;
                    // (s0 Z1)' = s0 (s1 Z0 - Z1/x)
                    ddu = sg.s0 * (sg.s1 * p.z0 - p.z1 / x);
                } else {
                    u = p.z1;
                    du = sg.s1 * p.z0 - p.z1 / x;
                    // (s1 Z0 - Z1/x)' = s1 s0 Z1 - du/x + Z1/x^2
                    ddu = sg.s1 * sg.s0 * p.z1 - du / x + p.z1 / (static_cast<long double>(x) * x);
                }
                const long double res = x * x * ddu + x * du + (sign * x * x - n * n) * u;
                const long double scale = std::fabs(x * x * ddu) + std::fabs(x * du) + std::fabs((x * x + n * n) * u);
                INFO("family ", static_cast<int>(fam), " n ", n, " x ", x);
                CHECK(static_cast<double>(std::fabs(res) / scale) <= 1e-8);
            }
        }
    }
}

TEST_CASE("K0 is positive and decreasing")
{
    double prev = bessel_eval({BesselFamily::K, 0}, 1e-3);
    for (double x : log_grid(1e-3, 600.0, 400)) {
        if (x == 1e-3)
            continue;
        const double v = bessel_eval({BesselFamily::K, 0}, x);
        CHECK(v > 0);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("domain and overflow errors")
{
    CHECK_THROWS_AS(bessel_eval({BesselFamily::Y, 0}, 0.0), DomainError);
    CHECK_THROWS_AS(bessel_eval({BesselFamily::K, 1}, -1.0), DomainError);
    CHECK_THROWS_AS(bessel_eval({BesselFamily::J, 0}, -1.0), DomainError);
    CHECK_THROWS_AS(bessel_eval({BesselFamily::I, 0}, 800.0), OverflowError);
    CHECK_NOTHROW(bessel_eval({BesselFamily::I, 0}, 700.0));
}

TEST_CASE("small-argument series agrees with the kernels")
{
    const BesselFamily families[] = {BesselFamily::J, BesselFamily::Y, BesselFamily::I, BesselFamily::K};
    for (auto fam : families)
        for (int order = 0; order <= 1; ++order)
            for (long double scale : {0.5L, 1.0L, 3.0L}) {
                const LogPowerSeries s = small_argument_series(fam, order, scale, 30);
                for (long double x : {0.01L, 0.1L, 0.5L}) {
                    const BesselPair p = bessel_pair(fam, scale * x);
                    const long double ref = order == 0 ? p.z0 : p.z1;
                    CHECK(static_cast<double>(std::fabs(s.eval(x) - ref)) <= 1e-17 * std::max(1.0L, std::fabs(ref)));
                }
            }
}
