#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>

#include "bessel4/bessel_type.hpp"
#include "bessel4/errors.hpp"
#include "bessel4/forms.hpp"
#include "test_util.hpp"

using namespace bessel4;

TEST_CASE("Lambda and (c, d) maps")
{
    CHECK(lambda_to_Lambda(0.0, Params::from_M(3.0)) == 0.0);
    CHECK(lambda_to_Lambda(1.0, Params::from_M(1.0)) == doctest::Approx(9.0).epsilon(1e-15));
    CHECK(lambda_to_Lambda(2.0, Params::from_M(0.5)) == doctest::Approx(80.0).epsilon(1e-15));
    CDPair cd = cd_params(0.0, Params::from_M(2.0));
    CHECK(cd.c == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(cd.d == 1.0);
    cd = cd_params(2.0, Params::from_M(1.0));
    CHECK(cd.c == doctest::Approx(std::sqrt(12.0)).epsilon(1e-15));
    CHECK(cd.d == doctest::Approx(2.0).epsilon(1e-15));
    cd = cd_params(0.0, Params::from_M(8.0));
    CHECK(cd.c == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(cd.d == 1.0);
    CHECK_THROWS_AS(Params::from_M(0.0), DomainError);
}

TEST_CASE("regular solutions equal one at the origin")
{
    for (double lam : {0.0, 0.5, 1.0, 2.0, 7.0})
        for (double M : {0.5, 1.0, 4.0}) {
            const Params p = Params::from_M(M);
            CHECK(SolutionHandle(SolutionKind::Jtype, lam, p).value(0.0) == doctest::Approx(1.0).epsilon(1e-15));
            CHECK(SolutionHandle(SolutionKind::Itype, lam, p).value(0.0) == doctest::Approx(1.0).epsilon(1e-15));
            CHECK(SolutionHandle(SolutionKind::Jtype, lam, p).value(1e-9) == doctest::Approx(1.0).epsilon(1e-12));
        }
}

TEST_CASE("closed forms against direct kernel evaluation")
{
    const Params p = Params::from_M(1.3);
    const double lam = 1.7;
    const CDPair cd = cd_params(lam, p);
    for (double x : {0.05, 0.4, 1.0, 3.0, 12.0}) {
        const double lx = lam * x, cx = cd.c * x;
        const double j = cd.d * bessel_eval({BesselFamily::J, 0}, lx) - 2 * p.M * lam * lam / 4 / lx * bessel_eval({BesselFamily::J, 1}, lx);
        const double y = cd.d * bessel_eval({BesselFamily::Y, 0}, lx) - 2 * p.M * lam * lam / 4 / lx * bessel_eval({BesselFamily::Y, 1}, lx);
        const double i = -cd.d * bessel_eval({BesselFamily::I, 0}, cx) + 0.5 * cd.c * p.M / x * bessel_eval({BesselFamily::I, 1}, cx);
        const double k = cd.d * bessel_eval({BesselFamily::K, 0}, cx) + 0.5 * cd.c * p.M / x * bessel_eval({BesselFamily::K, 1}, cx);
        // the direct formula loses digits to cancellation for small x; 1e-9 leaves room for that
        CHECK(SolutionHandle(SolutionKind::Jtype, lam, p).value(x) == doctest::Approx(j).epsilon(1e-9));
        CHECK(SolutionHandle(SolutionKind::Ytype, lam, p).value(x) == doctest::Approx(y).epsilon(1e-9));
        CHECK(SolutionHandle(SolutionKind::Itype, lam, p).value(x) == doctest::Approx(i).epsilon(1e-9));
        CHECK(SolutionHandle(SolutionKind::Ktype, lam, p).value(x) == doctest::Approx(k).epsilon(1e-9));
    }
}

TEST_CASE("series branch matches the direct formula at the switch")
{
    const Params p = Params::from_M(1.0);
    for (auto kind : {SolutionKind::Jtype, SolutionKind::Ytype, SolutionKind::Itype, SolutionKind::Ktype}) {
        const SolutionHandle h(kind, 1.0, p);
        const long double r = h.combination().series_radius();
        long double below[5], above[5];
        h.combination().derivatives(r * (1 - 1e-12L), 4, below);
        h.combination().derivatives(r * (1 + 1e-12L), 4, above);
        for (int k = 0; k <= 4; ++k)
            CHECK(static_cast<double>(std::fabs(below[k] - above[k])) <= 1e-10 * (1 + std::fabs(static_cast<double>(above[k]))));
    }
}

TEST_CASE("derivatives agree with finite differences")
{
    const Params p = Params::from_M(1.0);
    const SolutionHandle j(SolutionKind::Jtype, 1.0, p);
    const auto d = j.derivs(1.0, 4);
    CHECK(d[1] == doctest::Approx(central_difference([&](double t) { return j.value(t); }, 1.0, 1e-3)).epsilon(1e-6));

    const SolutionHandle k(SolutionKind::Ktype, 1.0, p);
    const auto dk = k.derivs(5.0, 4);
    const auto third = [&](double t) { return k.derivs(t, 3)[3]; };
    CHECK(dk[4] == doctest::Approx(central_difference(third, 5.0, 1e-3)).epsilon(1e-5));

    for (auto kind : {SolutionKind::Jtype, SolutionKind::Ytype, SolutionKind::Itype, SolutionKind::Ktype})
        for (double x : {0.3, 1.0, 2.5, 9.0}) {
            const SolutionHandle h(kind, 0.8, p);
            const auto dv = h.derivs(x, 4);
            for (int order = 1; order <= 4; ++order) {
                const auto prev = [&](double t) { return h.derivs(t, order - 1)[order - 1]; };
                const double fd = central_difference(prev, x, 1e-3 * x);
                CHECK(std::fabs(dv[order] - fd) <= 1e-6 * std::max(1.0, std::fabs(dv[order])));
            }
        }
}

TEST_CASE("lambda = 0 Jtype is the constant 1")
{
    const SolutionHandle h(SolutionKind::Jtype, 0.0, Params::from_M(2.0));
    for (double x : {0.0, 0.5, 10.0}) {
        const auto d = h.derivs(x, 4);
        CHECK(d[0] == 1.0);
        for (int k = 1; k <= 4; ++k)
            CHECK(d[k] == 0.0);
    }
    CHECK_THROWS_AS(SolutionHandle(SolutionKind::Ytype, 0.0, Params::from_M(1.0)), DomainError);
}

TEST_CASE("domain errors")
{
    const Params p = Params::from_M(1.0);
    CHECK_THROWS_AS(SolutionHandle(SolutionKind::Ytype, 1.0, p).value(0.0), DomainError);
    CHECK_THROWS_AS(SolutionHandle(SolutionKind::Ktype, 1.0, p).value(-1.0), DomainError);
    CHECK_THROWS_AS(SolutionHandle(SolutionKind::Jtype, 1.0, p).value(-1.0), DomainError);
    CHECK_THROWS_AS(SolutionHandle(SolutionKind::Jtype, -1.0, p), DomainError);
}

TEST_CASE("ODE residual on the acceptance grid")
{
    const auto grid = log_grid(0.01, 30.0, 40);
    for (double lam : {0.1, 0.5, 1.0, 2.0, 5.0})
        for (double M : {0.5, 1.0, 4.0}) {
            const Params p = Params::from_M(M);
            for (auto kind : {SolutionKind::Jtype, SolutionKind::Ytype, SolutionKind::Itype, SolutionKind::Ktype}) {
                const SolutionHandle h(kind, lam, p);
                INFO("kind ", to_string(kind), " lambda ", lam, " M ", M);
                CHECK(residual_LM(h, h.Lambda(), grid) <= 1e-6);
            }
        }
}

TEST_CASE("the four solutions form a basis")
{
    const Params p = Params::from_M(1.0);
    Eigen::Matrix4d W;
    int col = 0;
    for (auto kind : {SolutionKind::Jtype, SolutionKind::Ytype, SolutionKind::Itype, SolutionKind::Ktype}) {
        const auto d = SolutionHandle(kind, 1.0, p).derivs(1.0, 3);
        for (int r = 0; r < 4; ++r)
            W(r, col) = d[r];
        ++col;
    }
    for (int r = 0; r < 4; ++r)
        W.row(r) /= W.row(r).norm();
    CHECK(std::fabs(W.determinant()) > 1e-12);
}

TEST_CASE("realness, classical limit and decay")
{
    for (double lam : {0.1, 1.0, 5.0})
        for (double x : log_grid(1e-3, 30.0, 25))
            for (auto kind : {SolutionKind::Jtype, SolutionKind::Ytype, SolutionKind::Itype, SolutionKind::Ktype}) {
                const double v = SolutionHandle(kind, lam, Params::from_M(1.0)).value(x);
                CHECK(std::isfinite(v));
            }

    double prev = 1e300;
    for (double M : {1.0, 0.1, 0.01, 0.001}) {
        const SolutionHandle h(SolutionKind::Jtype, 1.0, Params::from_M(M));
        double worst = 0;
        for (double x : linear_grid(0.1, 10.0, 200))
            worst = std::max(worst, std::fabs(h.value(x) - bessel_eval({BesselFamily::J, 0}, x)));
        CHECK(worst < prev);
        prev = worst;
    }
    CHECK(prev <= 5e-3);

    const SolutionHandle k(SolutionKind::Ktype, 1.0, Params::from_M(1.0));
    const double c = cd_params(1.0, Params::from_M(1.0)).c;
    double last = 1e300;
    for (double x : {20.0, 40.0, 80.0}) {
        const double scaled = k.value(x) * std::exp(c * x / 2);
        CHECK(scaled < last);
        CHECK(scaled < 1e-3);
        last = scaled;
    }
}
