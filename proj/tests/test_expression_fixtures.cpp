#include "doctest.h"

#include <cmath>

#include "bessel4/errors.hpp"
#include "bessel4/expression.hpp"
#include "bessel4/fixtures.hpp"
#include "test_util.hpp"

using namespace bessel4;

TEST_CASE("expression parsing and precedence")
{
    CHECK(Expression::parse("1 + 2*3")(0.0) == 7.0);
    CHECK(Expression::parse("2^3^2")(0.0) == 512.0);
    CHECK(Expression::parse("-x^2")(3.0) == -9.0);
    CHECK(Expression::parse("(1+x)/(2-x)")(1.0) == 2.0);
    CHECK(Expression::parse("exp(-x)/(1+x)")(1.0) == doctest::Approx(std::exp(-1.0) / 2));
    CHECK(Expression::parse("sin(pi/2) + cos(0) + sqrt(4) + log(exp(2))")(0.0) == doctest::Approx(6.0));
    CHECK(Expression::parse("2.5e-1*x")(4.0) == 1.0);
    CHECK_THROWS_AS(Expression::parse("1 +"), DomainError);
    CHECK_THROWS_AS(Expression::parse("foo(x)"), DomainError);
    CHECK_THROWS_AS(Expression::parse("(x"), DomainError);
    CHECK_THROWS_AS(Expression::parse("x y"), DomainError);
}

TEST_CASE("bump, cutoff and step")
{
    const Expression b = Expression::parse("bump(x)");
    CHECK(b(0.0) == 1.0);
    CHECK(b(1.0) == 0.0);
    CHECK(b(-1.5) == 0.0);
    CHECK(b(0.5) == doctest::Approx(std::exp(1 - 1 / 0.75)));
    const Expression c = Expression::parse("cutoff(x)");
    CHECK(c(-1.0) == 1.0);
    CHECK(c(0.0) == 1.0);
    CHECK(c(1.0) == 0.0);
    CHECK(c(0.5) == doctest::Approx(0.5));
    const Expression s = Expression::parse("step(x - 1)");
    CHECK(s(0.5) == 1.0);
    CHECK(s(1.0) == 0.5);
    CHECK(s(1.5) == 0.0);
}

TEST_CASE("expression jets agree with finite differences (seeded)")
{
    const Expression e = Expression::parse("x^4*exp(-x^2)*cos(3*x) + bump(x/3) + cutoff(x-1) + (1+x^2)^(-4)");
    Lcg rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const double x = rng.uniform(0.1, 2.9);
        const Jet j = e(Jet::variable(x, 2));
        CHECK(static_cast<double>(j.value()) == doctest::Approx(e(x)).epsilon(1e-15));
        const double fd = central_difference([&](double t) { return e(t); }, x, 1e-3);
        CHECK(static_cast<double>(j.derivative(1)) == doctest::Approx(fd).epsilon(1e-7));
    }
}

TEST_CASE("fixture file format")
{
    const auto suite = load_test_functions(default_fixture_path());
    REQUIRE(suite.size() == 3);
    CHECK(suite[0].name == "gaussian");
    CHECK(suite[0].measurable().value_at_zero == 1.0);
    CHECK(suite[1].decay == DecayClass::compact);
    CHECK(suite[1].support_end == 2.0);
    CHECK(suite[2].measurable().eval(1.0) == doctest::Approx(std::exp(-1.0) / 2));
    CHECK_THROWS_AS(parse_test_functions("a | x"), DomainError);
    CHECK_THROWS_AS(parse_test_functions("a | x | slow"), DomainError);
    CHECK_THROWS_AS(parse_test_functions("a | x | compact:-1"), DomainError);
    CHECK(parse_test_functions("# only a comment\n\n").empty());
}

TEST_CASE("positivity suite: minimal-domain functions give nonnegative energy")
{
    for (double M : {0.5, 1.0}) {
        const Params p = Params::from_M(M);
        const auto suite = positivity_suite(p);
        REQUIRE(suite.size() == 10);
        for (const auto& f : suite) {
            INFO(f.name);
            const BoundaryData b = boundary_data(f.fn, p);
            CHECK(std::fabs(b.f0) <= 1e-9);
            CHECK(std::fabs(b.f2) <= 1e-7);
            const double inner = operator_inner(f.fn, 1e-8, f.end, p, 1e-11);
            CHECK(inner >= -1e-8);
            const double energy = dirichlet_integral(f.fn, 1e-8, f.end, p, 1e-11);
            CHECK(std::fabs(inner - energy) <= 1e-6 * energy);
        }
    }
}

TEST_CASE("S_k positivity on cut-off solution combinations")
{
    const Params p = Params::from_M(1.0);
    for (const auto& f : sk_examples(p)) {
        INFO(f.name);
        REQUIRE(f.fn.boundary);
        for (double k : {0.5, 2.0}) {
            const double inner = sk_inner(f.fn, k, 1e-8, f.end, p, 1e-11);
            // the atom cancels the boundary term, leaving the Dirichlet integral
            const double energy = dirichlet_integral(f.fn, 1e-8, f.end, p, 1e-11);
            CHECK(inner >= -1e-8);
            CHECK(std::fabs(inner - energy) <= 1e-6 * std::max(1.0, energy));
        }
    }
}
