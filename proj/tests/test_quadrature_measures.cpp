#include "doctest.h"

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>

#include "bessel4/errors.hpp"
#include "bessel4/measures.hpp"
#include "bessel4/quadrature.hpp"
#include "test_util.hpp"

using namespace bessel4;
using std::numbers::pi;

TEST_CASE("adaptive quadrature on elementary integrals")
{
    CHECK(adaptive_quad([](double x) { return x; }, 0, 1, 1e-12).value == doctest::Approx(0.5).epsilon(1e-14));
    const QuadResult lg = adaptive_quad([](double x) { return std::log(x); }, 0, 1, 1e-10, EndpointSingularity::left);
    CHECK(lg.converged);
    CHECK(std::fabs(lg.value + 1.0) <= 1e-10);
    CHECK(adaptive_quad([](double x) { return std::sin(x); }, 0, pi, 1e-12).value == doctest::Approx(2.0).epsilon(1e-13));
    const QuadResult is = adaptive_quad([](double x) { return 1.0 / std::sqrt(1.0 - x); }, 0, 1, 1e-10, EndpointSingularity::right);
    CHECK(std::fabs(is.value - 2.0) <= 1e-10);
}

TEST_CASE("adaptive quadrature error estimates are honest")
{
    struct Case {
        RealFn f;
        double a, b, exact;
        EndpointSingularity sing;
    };
    const std::vector<Case> suite{
        {[](double x) { return std::exp(x); }, 0, 1, std::exp(1.0) - 1, EndpointSingularity::none},
        {[](double x) { return 1 / (1 + x * x); }, 0, 1, pi / 4, EndpointSingularity::none},
        {[](double x) { return std::sqrt(x); }, 0, 1, 2.0 / 3, EndpointSingularity::left},
        {[](double x) { return std::log(x); }, 0, 1, -1, EndpointSingularity::left},
        {[](double x) { return 1 / std::sqrt(x); }, 0, 1, 2, EndpointSingularity::left},
        {[](double x) { return std::cos(10 * x); }, 0, pi, 0, EndpointSingularity::none},
        {[](double x) { return std::exp(-x * x); }, -3, 3, std::sqrt(pi) * std::erf(3.0), EndpointSingularity::none},
        {[](double x) { return x * x * x * x * x; }, -1, 2, (64.0 - 1.0) / 6, EndpointSingularity::none},
        {[](double x) { return 1 / (1 + 25 * x * x); }, -1, 1, 0.4 * std::atan(5.0), EndpointSingularity::none},
        {[](double x) { return std::fabs(x - 0.3); }, 0, 1, 0.5 * (0.09 + 0.49), EndpointSingularity::none},
        {[](double x) { return std::sin(x) * std::sin(x); }, 0, 2 * pi, pi, EndpointSingularity::none},
        {[](double x) { return x * std::log(x); }, 0, 1, -0.25, EndpointSingularity::left},
        {[](double x) { return std::exp(-x) * std::cos(x); }, 0, 20, 0.5 * (1 - std::exp(-20.0) * (std::cos(20.0) - std::sin(20.0))), EndpointSingularity::none},
        {[](double x) { return 1 / x; }, 1, 100, std::log(100.0), EndpointSingularity::none},
        {[](double x) { return std::pow(x, -0.25); }, 0, 1, 4.0 / 3, EndpointSingularity::left},
        {[](double x) { return std::sqrt(1 - x * x); }, -1, 1, pi / 2, EndpointSingularity::both},
        {[](double x) { return boost::math::cyl_bessel_j(0, x); }, 0, 10, 1.0670113039567362, EndpointSingularity::none},
        {[](double x) { return x < 0.5 ? 1.0 : 0.0; }, 0, 1, 0.5, EndpointSingularity::none},
        {[](double x) { return std::exp(std::sin(x)); }, 0, 2 * pi, 2 * pi * 1.2660658777520082, EndpointSingularity::none},
        {[](double x) { return std::tanh(50 * (x - 0.5)); }, 0, 1, 0, EndpointSingularity::none},
    };
    REQUIRE(suite.size() == 20);
    for (std::size_t i = 0; i < suite.size(); ++i) {
        const Case& c = suite[i];
        const QuadResult q = adaptive_quad(c.f, c.a, c.b, 1e-9, c.sing);
        const double true_error = std::fabs(q.value - c.exact);
        INFO("case ", i, " value ", q.value, " estimate ", q.error);
        CHECK(q.converged);
        // 1e-15 absorbs rounding in the exact value itself
        CHECK(true_error <= 2 * q.error + 1e-15 * (1 + std::fabs(c.exact)));
    }
}

TEST_CASE("oscillatory semi-infinite integrals")
{
    const QuadResult dirichlet = oscillatory_semi_infinite([](double x) { return x == 0 ? 1.0 : std::sin(x) / x; }, pi, 1e-10);
    CHECK(std::fabs(dirichlet.value - pi / 2) <= 1e-8);
    const QuadResult j0 = oscillatory_semi_infinite([](double x) { return boost::math::cyl_bessel_j(0, x); }, pi, 1e-8);
    CHECK(std::fabs(j0.value - 1.0) <= 1e-6);
    CHECK(oscillatory_semi_infinite([](double) { return 0.0; }, pi, 1e-8).value == 0.0);
    const QuadResult decay = semi_infinite_quad([](double x) { return std::exp(-x); }, 0, 1e-12);
    CHECK(std::fabs(decay.value - 1.0) <= 1e-11);
}

TEST_CASE("Wynn epsilon accelerates an alternating series")
{
    double sums[16];
    double s = 0;
    for (int i = 0; i < 16; ++i) {
        s += (i % 2 ? -1.0 : 1.0) / (i + 1);
        sums[i] = s;
    }
    CHECK(std::fabs(wynn_epsilon(sums, 16) - std::log(2.0)) <= 1e-9);
}

TEST_CASE("inner products under the atom-plus-density measures")
{
    const MeasurableFn e{1.0, [](double x) { return std::exp(-x); }};
    for (double k : {0.0, 0.5, 2.0})
        CHECK(inner_product(e, e, AtomDensityMeasure::mk(k), 1e-10) == doctest::Approx(k + 0.25).epsilon(1e-9));
    const MeasurableFn zero{0.0, [](double) { return 0.0; }};
    CHECK(inner_product(zero, zero, AtomDensityMeasure::mk(1.0)) == 0.0);
    CHECK(inner_product(zero, zero, AtomDensityMeasure::n(Params::from_M(1.0))) == 0.0);
    const MeasurableFn one{1.0, [](double) { return 1.0; }};
    for (double M : {0.5, 1.0, 4.0})
        CHECK(std::fabs(inner_product(one, one, AtomDensityMeasure::n(Params::from_M(M)), 1e-10) - 2.0 / M) <= 1e-8);
    CHECK_THROWS_AS(AtomDensityMeasure::mk(-1.0), DomainError);
}

TEST_CASE("m_k minus its atom equals the weighted Lebesgue measure (seeded)")
{
    Lcg rng(2024);
    for (int trial = 0; trial < 10; ++trial) {
        const double a = rng.uniform(0.5, 3.0), b = rng.uniform(0.5, 3.0), k = rng.uniform(0.0, 4.0);
        const MeasurableFn f{1.0, [a](double x) { return std::exp(-a * x); }};
        const MeasurableFn g{1.0, [b](double x) { return std::exp(-b * x * x); }};
        const double with_atom = inner_product(f, g, AtomDensityMeasure::mk(k));
        const double lebesgue = inner_product(f, g, AtomDensityMeasure::lebesgue_x());
        CHECK(std::fabs(with_atom - k - lebesgue) <= 1e-14 * (1 + std::fabs(with_atom)));
    }
}

TEST_CASE("n measure density and total mass")
{
    const Params p = Params::from_M(2.0);
    CHECK(n_density(0.0, p) == 0.0);
    CHECK(n_density(2.0, p) == doctest::Approx(2.0 / 9.0));
    const QuadResult mass = integrate_dn([](double) { return 1.0; }, p, 1e-12);
    CHECK(std::fabs(mass.value - 1.0) <= 1e-10);
}
