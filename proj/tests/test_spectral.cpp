#include "doctest.h"

#include <cmath>

#include "bessel4/errors.hpp"
#include "bessel4/spectral.hpp"
#include "test_util.hpp"

using namespace bessel4;

TEST_CASE("extension boundary condition")
{
    CHECK(extension_boundary_condition({0.0, 1.0}, {0.0, 3.0}) == 0.0);
    CHECK(extension_boundary_condition({1.0, 0.0}, {5.0, 0.0}) == 0.0);
    CHECK(extension_boundary_condition({1.0, 1.0}, {1.0, 2.0}) == 0.0);
    const ExtensionParams e = ExtensionParams::normalized(-3.0, 4.0);
    CHECK(e.alpha == doctest::Approx(0.6));
    CHECK(e.beta == doctest::Approx(-0.8));
    CHECK(ExtensionParams::normalized(0.0, -2.0).beta == 1.0);
    CHECK_THROWS_AS(ExtensionParams::normalized(0.0, 0.0), DomainError);
}

TEST_CASE("decaying regular solution inside the real-decay window")
{
    const Params p = Params::from_M(1.0);
    const EigenCandidate c = decaying_regular_solution(-1.0, p);
    CHECK(c.residual <= 1e-6);
    CHECK(c.a_plus > c.a_minus);
    CHECK(c.a_plus * c.a_plus + c.a_minus * c.a_minus == doctest::Approx(8.0)); // 8/M
    CHECK(std::isfinite(c.boundary.f0));
    CHECK(std::isfinite(c.boundary.f2));
    // series boundary data agree with independent extrapolation
    const BoundaryData ex = boundary_data(c.fn, p);
    CHECK(ex.f0 == doctest::Approx(c.boundary.f0).epsilon(1e-8));
    CHECK(ex.f2 == doctest::Approx(c.boundary.f2).epsilon(1e-6));
    // decay against an independent residual check on a wider grid
    CHECK(residual_LM(c.fn, -1.0, log_grid(1e-3, 60.0, 50), p) <= 1e-6);
    CHECK(std::fabs(static_cast<double>(c.fn.value(60.0))) < 1e-8);

    const EigenCandidate slow = decaying_regular_solution(-1e-3, p);
    CHECK(slow.a_minus < 0.02);
    CHECK(slow.a_minus < c.a_minus);
}

TEST_CASE("degenerate decay outside the window")
{
    const Params p = Params::from_M(1.0);
    CHECK_THROWS_AS(decaying_regular_solution(-16.0, p), DomainError);
    CHECK_THROWS_AS(decaying_regular_solution(-20.0, p), DomainError);
    CHECK_THROWS_AS(decaying_regular_solution(0.0, p), DomainError);
    CHECK_NOTHROW(decaying_regular_solution(-3.9, Params::from_M(2.0)));
}

TEST_CASE("eigenvalue to extension map")
{
    const Params p = Params::from_M(1.0);
    const auto grid = log_grid(1e-3, 15.0, 20);
    std::vector<ExtensionParams> seen;
    for (double m : grid) {
        const double mu = -m;
        const ExtensionParams e = extension_for_eigenvalue(mu, p);
        const EigenCandidate c = decaying_regular_solution(mu, p);
        CHECK(std::fabs(e.alpha) > 1e-3);
        CHECK(std::fabs(extension_boundary_condition(e, c.boundary)) <= 1e-8);
        CHECK(e.alpha * e.alpha + e.beta * e.beta == doctest::Approx(1.0).epsilon(1e-14));
        for (const auto& s : seen)
            CHECK(std::hypot(s.alpha - e.alpha, s.beta - e.beta) >= 1e-6);
        seen.push_back(e);
    }
}

TEST_CASE("S_k has no eigenvalue on sampled grids")
{
    const Params p = Params::from_M(1.0);
    const SkScanReport one = sk_no_eigenvalue_scan(1.0, p, {-1.0});
    CHECK(one.entries[0].tested);
    CHECK(one.entries[0].defect > 1e-3);
    std::vector<double> mus;
    for (double m : log_grid(1e-2, 15.0, 10))
        mus.push_back(-m);
    const SkScanReport half = sk_no_eigenvalue_scan(0.5, p, mus);
    CHECK(half.all_passed);
    for (const auto& e : half.entries)
        CHECK(e.tested);
    const SkScanReport outside = sk_no_eigenvalue_scan(1.0, p, {-20.0});
    CHECK(!outside.entries[0].tested);
    CHECK(outside.entries[0].note == "degenerate-decay");
    CHECK(outside.all_passed);
}

TEST_CASE("positive Lambda: oscillation without decay")
{
    const Params p = Params::from_M(1.0);
    for (double Lambda : {1.0, 4.0, 25.0}) {
        CHECK(oscillation_envelope(Lambda, p) > 0.1);
        CHECK(lambda_to_Lambda(lambda_from_Lambda(Lambda, p), p) == doctest::Approx(Lambda).epsilon(1e-14));
    }
}
