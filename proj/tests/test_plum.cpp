#include "doctest.h"

#include <cmath>
#include <numbers>

#include "bessel4/errors.hpp"
#include "bessel4/plum.hpp"
#include "test_util.hpp"

using namespace bessel4;

namespace {

std::vector<double> theta_grid() { return linear_grid(0.0, 2 * std::numbers::pi * 7.0 / 8.0, 8); }

} // namespace

TEST_CASE("separated solutions satisfy the plate-type equation")
{
    for (double M : {0.5, 1.0, 4.0})
        for (SolutionKind kind : {SolutionKind::Jtype, SolutionKind::Ytype, SolutionKind::Itype, SolutionKind::Ktype})
            for (double lambda : {0.5, 1.0, 2.0}) {
                CAPTURE(M);
                CAPTURE(to_string(kind));
                CAPTURE(lambda);
                const SeparatedSolution u = SeparatedSolution::from_handle(SolutionHandle(kind, lambda, Params::from_M(M)), 0.7, -1.3);
                double worst = 0.0;
                for (double r : linear_grid(0.2, 5.0, 10))
                    for (double theta : theta_grid())
                        worst = std::max(worst, apply_plum(u, r, theta).relative());
                CHECK(worst <= 1e-5);
            }
}

TEST_CASE("plate operator: zero, linearity and angular exactness")
{
    const Params p = Params::from_M(1.0);
    SeparatedSolution zero{polynomial_bundle({0.0L}), 1.0, 0.0, p, 3.0};
    CHECK(apply_plum(zero, 1.0, 0.3).value == 0.0);

    const FnBundle a = make_bundle(SolutionHandle(SolutionKind::Jtype, 1.0, p));
    const FnBundle b = make_bundle(SolutionHandle(SolutionKind::Ktype, 0.4, p));
    Lcg rng(20240611);
    for (int trial = 0; trial < 20; ++trial) {
        const double r = rng.uniform(0.2, 5.0), theta = rng.uniform(0.0, 6.3);
        const double s = rng.uniform(-2.0, 2.0);
        const SeparatedSolution ua{a, 0.3, 0.9, p, 0.0}, ub{b, 0.3, 0.9, p, 0.0};
        const SeparatedSolution uab{sum({{1.0L, a}, {static_cast<long double>(s), b}}), 0.3, 0.9, p, 0.0};
        const double lhs = apply_plum(uab, r, theta).value;
        const double rhs = apply_plum(ua, r, theta).value + s * apply_plum(ub, r, theta).value;
        CHECK(std::fabs(lhs - rhs) <= 1e-12 * (1.0 + std::fabs(lhs)));
    }

    // P u / w is independent of theta
    const SeparatedSolution u = SeparatedSolution::from_handle(SolutionHandle(SolutionKind::Itype, 1.5, p), 1.0, 0.5);
    for (double r : {0.3, 1.0, 4.0}) {
        const double ref = apply_plum(u, r, 0.1).value / u.angular(0.1);
        for (double theta : {0.4, 1.0, 2.5, 5.0})
            CHECK(apply_plum(u, r, theta).value / u.angular(theta) == doctest::Approx(ref).epsilon(1e-12));
    }
    CHECK_THROWS_AS(apply_plum(u, 0.0, 0.0), DomainError);
}

TEST_CASE("separation residual")
{
    const Params p = Params::from_M(1.0);
    const SolutionHandle j(SolutionKind::Jtype, 1.0, p);
    CHECK(separation_residual(make_bundle(j), p, j.Lambda(), log_grid(0.05, 20.0, 30)) <= 1e-6);
    CHECK(separation_residual(polynomial_bundle({1.0L}), p, 0.0, {0.3, 1.0, 7.0}) == 0.0);
    // v = x^2: -(9/r^2 + gamma) 2 + (9/r^3 - gamma/r) 2r = -4 gamma
    const FnBundle x2 = polynomial_bundle({0.0L, 0.0L, 1.0L});
    for (double M : {0.5, 2.0}) {
        const Params q = Params::from_M(M);
        for (double r : {0.2, 1.0, 3.0})
            CHECK(static_cast<double>(radial_expression(x2, q, 0.0, r)) == doctest::Approx(-4.0 * q.gamma).epsilon(1e-14));
    }
    // the radial expression is L_M f / x
    Lcg rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        const Params q = Params::from_M(rng.uniform(0.3, 4.0));
        const SolutionHandle h(SolutionKind::Ytype, rng.uniform(0.2, 3.0), q);
        const FnBundle f = make_bundle(h);
        const double Lambda = rng.uniform(-5.0, 5.0);
        const long double x = rng.uniform(0.1, 10.0);
        const long double via_lm = apply_LM(f, x, q) / x - Lambda * f.value(x);
        const long double direct = radial_expression(f, q, Lambda, x);
        CHECK(std::fabs(static_cast<double>(via_lm - direct)) <= 1e-10 * (1.0 + std::fabs(static_cast<double>(direct))));
    }
}

TEST_CASE("angular separation constant is critical")
{
    CHECK(angular_criticality_check(4.0));
    CHECK_FALSE(angular_criticality_check(1.0));
    CHECK_FALSE(angular_criticality_check(0.0));
    CHECK_FALSE(angular_criticality_check(9.0));
    CHECK_FALSE(angular_criticality_check(4.0 + 1e-6));
    CHECK_THROWS_AS(angular_criticality_check(-1.0), DomainError);
    // at c = 4 the symbolic operator equals the polar expansion used by apply_plum
    const RadialOperator op = separated_operator(4.0);
    CHECK(op.terms().size() == 6);
    CHECK(op.terms().at({2, 2, 0}) == -9.0);
    CHECK(op.terms().at({1, 3, 0}) == 9.0);
    // at c = 1 the leftover zeroth-order part is gamma (c - 4) / r^2 + (c^2 - 4c) / r^4
    const RadialOperator off = separated_operator(1.0);
    CHECK(off.terms().at({0, 2, 1}) == -3.0);
    CHECK(off.terms().at({0, 4, 0}) == -3.0);
}
