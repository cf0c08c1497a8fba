#include "bessel4/verification.hpp"

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bessel4/classical_bessel.hpp"
#include "bessel4/errors.hpp"
#include "bessel4/fixtures.hpp"
#include "bessel4/forms.hpp"
#include "bessel4/frobenius.hpp"
#include "bessel4/measures.hpp"
#include "bessel4/plum.hpp"
#include "bessel4/spectral.hpp"
#include "bessel4/transforms.hpp"

namespace bessel4 {

namespace {

using std::numbers::pi;

constexpr SolutionKind all_kinds[] = {SolutionKind::Jtype, SolutionKind::Ytype, SolutionKind::Itype, SolutionKind::Ktype};

std::vector<double> log_points(double a, double b, int n)
{
    std::vector<double> g;
    for (int i = 0; i < n; ++i)
        g.push_back(a * std::pow(b / a, static_cast<double>(i) / (n - 1)));
    return g;
}

std::vector<double> linear_points(double a, double b, int n)
{
    std::vector<double> g;
    for (int i = 0; i < n; ++i)
        g.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    return g;
}

double quad_tol(const VerifyOptions& o, double threshold) { return std::min(o.tol, threshold / 10.0); }

CheckResult measured(double value, double threshold, std::string detail = {})
{
    CheckResult r;
    r.measured = value;
    r.threshold = threshold;
    r.passed = std::isfinite(value) && value <= threshold;
    r.detail = std::move(detail);
    return r;
}

// Boolean property expressed as a violation count against threshold 0.
CheckResult violations(int count, std::string detail = {}) { return measured(count, 0.0, std::move(detail)); }

std::string format(double v)
{
    std::ostringstream s;
    s.precision(3);
    s << v;
    return s.str();
}

FnBundle solution(SolutionKind kind, double lambda, const Params& p) { return make_bundle(SolutionHandle(kind, lambda, p)); }

// ---- classical kernels -------------------------------------------------

CheckResult wronskian(const VerifyOptions&)
{
    double worst = 0.0;
    for (double x : log_points(1e-3, 50.0, 60)) {
        const double w = bessel_eval({BesselFamily::J, 0}, x) * bessel_eval_derivative({BesselFamily::Y, 0}, x) -
                         bessel_eval({BesselFamily::Y, 0}, x) * bessel_eval_derivative({BesselFamily::J, 0}, x);
        const double expect = 2.0 / (pi * x);
        worst = std::max(worst, std::fabs(w - expect) / expect);
    }
    return measured(worst, 1e-10);
}

CheckResult bessel_residual(const VerifyOptions&)
{
    double worst = 0.0;
    for (BesselFamily fam : {BesselFamily::J, BesselFamily::Y, BesselFamily::I, BesselFamily::K}) {
        const double sign = (fam == BesselFamily::I || fam == BesselFamily::K) ? -1.0 : 1.0;
        const DerivativeSigns sg = derivative_signs(fam);
        for (int n = 0; n <= 1; ++n)
            for (double xd : log_points(1e-3, 50.0, 60)) {
                const long double x = xd;
                const BesselPair p = bessel_pair(fam, x);
                long double u, du, ddu;
                if (n == 0) {
                    u = p.z0;
                    du = sg.s0 * p.z1;
                    ddu = sg.s0 * (sg.s1 * p.z0 - p.z1 / x);
                } else {
                    u = p.z1;
                    du = sg.s1 * p.z0 - p.z1 / x;
                    ddu = sg.s1 * sg.s0 * p.z1 - du / x + p.z1 / (x * x);
                }
                const long double res = x * x * ddu + x * du + (sign * x * x - n * n) * u;
                const long double scale = std::fabs(x * x * ddu) + std::fabs(x * du) + std::fabs((x * x + n * n) * u);
                worst = std::max(worst, static_cast<double>(std::fabs(res) / scale));
            }
    }
    return measured(worst, 1e-8);
}

CheckResult k_positive_decreasing(const VerifyOptions&)
{
    int bad = 0;
    double prev = INFINITY;
    for (double x : log_points(1e-3, 600.0, 400)) {
        const double v = bessel_eval({BesselFamily::K, 0}, x);
        if (!(v > 0.0) || !(v < prev))
            ++bad;
        prev = v;
    }
    return violations(bad);
}

// ---- Bessel-type solutions ---------------------------------------------

CheckResult ode_residual(const VerifyOptions&)
{
    const auto grid = log_points(0.01, 30.0, 40);
    double worst = 0.0;
    std::string where;
    for (double lambda : {0.5, 1.0, 2.0})
        for (double M : {0.5, 1.0, 4.0})
            for (SolutionKind kind : all_kinds) {
                const SolutionHandle h(kind, lambda, Params::from_M(M));
                const double r = residual_LM(h, h.Lambda(), grid);
                if (r > worst) {
                    worst = r;
                    where = std::string(to_string(kind)) + " lambda=" + format(lambda) + " M=" + format(M);
                }
            }
    return measured(worst, 1e-6, "worst at " + where);
}

CheckResult normalization(const VerifyOptions&)
{
    double worst = 0.0;
    for (double lambda : {0.5, 1.0, 2.0})
        for (double M : {0.5, 1.0, 4.0}) {
            const Params p = Params::from_M(M);
            worst = std::max(worst, std::fabs(SolutionHandle(SolutionKind::Jtype, lambda, p).value(0.0) - 1.0));
            worst = std::max(worst, std::fabs(SolutionHandle(SolutionKind::Itype, lambda, p).value(0.0) - 1.0));
        }
    return measured(worst, 1e-10);
}

CheckResult classical_limit(const VerifyOptions&)
{
    double prev = INFINITY;
    int non_monotone = 0;
    std::string trail;
    for (double M : {1.0, 0.1, 0.01, 0.001}) {
        const SolutionHandle h(SolutionKind::Jtype, 1.0, Params::from_M(M));
        double worst = 0.0;
        for (double x : linear_points(0.1, 10.0, 200))
            worst = std::max(worst, std::fabs(h.value(x) - bessel_eval({BesselFamily::J, 0}, x)));
        if (!(worst < prev))
            ++non_monotone;
        prev = worst;
        trail += (trail.empty() ? "" : ", ") + format(worst);
    }
    CheckResult r = measured(prev, 5e-3, "defects over M = 1, 0.1, 0.01, 0.001: " + trail);
    if (non_monotone > 0) {
        r.passed = false;
        r.detail += " (not monotone)";
    }
    return r;
}

CheckResult basis(const VerifyOptions& o)
{
    const Params p = Params::from_M(o.M);
    Eigen::Matrix4d W;
    int col = 0;
    for (SolutionKind kind : all_kinds) {
        const auto d = SolutionHandle(kind, 1.0, p).derivs(1.0, 3);
        for (int r = 0; r < 4; ++r)
            W(r, col) = d[r];
        ++col;
    }
    for (int r = 0; r < 4; ++r)
        W.row(r) /= W.row(r).norm();
    const double det = std::fabs(W.determinant());
    return measured(1e-12 / det, 1.0, "|det| after row scaling = " + format(det));
}

CheckResult realness(const VerifyOptions& o)
{
    int bad = 0;
    for (double lambda : {0.1, 1.0, 5.0})
        for (double x : log_points(1e-3, 30.0, 25))
            for (SolutionKind kind : all_kinds)
                if (!std::isfinite(SolutionHandle(kind, lambda, Params::from_M(o.M)).value(x)))
                    ++bad;
    return violations(bad);
}

CheckResult k_decay(const VerifyOptions& o)
{
    const Params p = Params::from_M(o.M);
    const SolutionHandle k(SolutionKind::Ktype, 1.0, p);
    const double c = cd_params(1.0, p).c;
    double last = INFINITY, worst = 0.0;
    int bad = 0;
    for (double x : {20.0, 40.0, 80.0}) {
        const double scaled = std::fabs(k.value(x)) * std::exp(c * x / 2);
        if (!(scaled < last))
            ++bad;
        last = scaled;
        worst = scaled;
    }
    CheckResult r = measured(worst, 1e-3, "K e^{cx/2} at x = 80");
    r.passed = r.passed && bad == 0;
    return r;
}

// ---- Frobenius ---------------------------------------------------------

CheckResult indicial(const VerifyOptions&)
{
    int bad = 0;
    for (double Lambda : {0.0, 1.0, -5.0})
        for (double M : {0.1, 1.0, 10.0}) {
            const Params p = Params::from_M(M);
            bad += indicial_roots(OdeSpec::bessel_type(4, p, Lambda)) != std::vector<int>{4, 2, 0, -2};
            bad += indicial_roots(OdeSpec::bessel_type(6, p, Lambda)) != std::vector<int>{6, 4, 2, 0, -2, -4};
            bad += indicial_roots(OdeSpec::bessel_type(8, p, Lambda)) != std::vector<int>{8, 6, 4, 2, 0, -2, -4, -6};
        }
    return violations(bad);
}

CheckResult y4_coefficients(const VerifyOptions&)
{
    double worst = 0.0;
    for (double M : {0.5, 1.0, 3.0}) {
        const FrobeniusSeries y4 = y4_series(2.0, Params::from_M(M), 20);
        worst = std::max(worst, static_cast<double>(std::fabs(y4.coeffs[0] - 1.0L)));
        const long double a2 = 1.0L / (3.0L * M);
        worst = std::max(worst, static_cast<double>(std::fabs(y4.coeffs[2] - a2) / a2));
    }
    return measured(worst, 1e-15, "relative deviation of a0 = 1 and a2 = 1/(3M)");
}

CheckResult y4_residual(const VerifyOptions& o)
{
    const Params p = Params::from_M(o.M);
    const double Lambda = 1.0;
    const FnBundle y4 = make_bundle(y4_series(Lambda, p, 20));
    const long double x = 0.1L;
    const long double rhs = Lambda * x * y4.value(x);
    return measured(static_cast<double>(std::fabs(apply_LM(y4, x, p) - rhs) / std::fabs(rhs)), 1e-12);
}

// ---- measures and quadrature -------------------------------------------

CheckResult n_mass(const VerifyOptions&)
{
    const MeasurableFn one{1.0, [](double) { return 1.0; }};
    double worst = 0.0;
    for (double M : {0.5, 1.0, 2.0, 4.0})
        worst = std::max(worst, std::fabs(inner_product(one, one, AtomDensityMeasure::n(Params::from_M(M)), 1e-10) - 2.0 / M));
    return measured(worst, 1e-8);
}

CheckResult mk_consistency(const VerifyOptions&)
{
    double worst = 0.0;
    for (double a : {0.7, 1.9})
        for (double k : {0.0, 0.5, 3.0}) {
            const MeasurableFn f{1.0, [a](double x) { return std::exp(-a * x); }};
            const MeasurableFn g{1.0, [](double x) { return std::exp(-x * x); }};
            const double with_atom = inner_product(f, g, AtomDensityMeasure::mk(k));
            const double lebesgue = inner_product(f, g, AtomDensityMeasure::lebesgue_x());
            worst = std::max(worst, std::fabs(with_atom - k - lebesgue) / (1.0 + std::fabs(with_atom)));
        }
    return measured(worst, 1e-14);
}

CheckResult quadrature_honesty(const VerifyOptions&)
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
        {[](double x) { return x * x * x * x * x; }, -1, 2, 63.0 / 6, EndpointSingularity::none},
        {[](double x) { return 1 / (1 + 25 * x * x); }, -1, 1, 0.4 * std::atan(5.0), EndpointSingularity::none},
        {[](double x) { return std::fabs(x - 0.3); }, 0, 1, 0.29, EndpointSingularity::none},
        {[](double x) { return std::sin(x) * std::sin(x); }, 0, 2 * pi, pi, EndpointSingularity::none},
        {[](double x) { return x * std::log(x); }, 0, 1, -0.25, EndpointSingularity::left},
        {[](double x) { return std::exp(-x) * std::cos(x); }, 0, 20,
         0.5 * (1 - std::exp(-20.0) * (std::cos(20.0) - std::sin(20.0))), EndpointSingularity::none},
        {[](double x) { return 1 / x; }, 1, 100, std::log(100.0), EndpointSingularity::none},
        {[](double x) { return std::pow(x, -0.25); }, 0, 1, 4.0 / 3, EndpointSingularity::left},
        {[](double x) { return std::sqrt(1 - x * x); }, -1, 1, pi / 2, EndpointSingularity::both},
        {[](double x) { return x * x * std::exp(-x); }, 0, 30, 2.0 - std::exp(-30.0) * (900.0 + 60.0 + 2.0), EndpointSingularity::none},
        {[](double x) { return x < 0.5 ? 1.0 : 0.0; }, 0, 1, 0.5, EndpointSingularity::none},
        {[](double x) { return std::exp(std::sin(x)); }, 0, 2 * pi, 2 * pi * 1.2660658777520082, EndpointSingularity::none},
        {[](double x) { return std::tanh(50 * (x - 0.5)); }, 0, 1, 0, EndpointSingularity::none},
    };
    int bad = 0;
    for (const Case& c : suite) {
        const QuadResult q = adaptive_quad(c.f, c.a, c.b, 1e-9, c.sing);
        if (!q.converged || std::fabs(q.value - c.exact) > 2 * q.error + 1e-15 * (1 + std::fabs(c.exact)))
            ++bad;
    }
    return violations(bad, "cases where the true error exceeds twice the estimate (of 20)");
}

// ---- forms -------------------------------------------------------------

const FnBundle& one_bundle()
{
    static const FnBundle b = polynomial_bundle({1.0L});
    return b;
}
const FnBundle& x2_bundle()
{
    static const FnBundle b = polynomial_bundle({0.0L, 0.0L, 1.0L});
    return b;
}

CheckResult form_constant(const VerifyOptions& o)
{
    const Params p = Params::from_M(o.M);
    const double v = limit_at_zero([&](long double x) { return symplectic_form(one_bundle(), x2_bundle(), x, p); });
    return measured(std::fabs(std::fabs(v) - 16.0), 1e-6, "[1, x^2](0+) = " + format(v));
}

CheckResult form_with_one(const VerifyOptions& o)
{
    const Params p = Params::from_M(o.M);
    double worst = 0.0;
    for (SolutionKind kind : {SolutionKind::Jtype, SolutionKind::Itype})
        for (double lambda : {0.5, 1.3}) {
            const BoundaryExtraction e = extract_boundary(solution(kind, lambda, p), p);
            const double expect = -8.0 * e.data.f2;
            worst = std::max(worst, std::fabs(e.form_with_one - expect) / std::fabs(expect));
        }
    return measured(worst, 1e-5);
}

CheckResult form_with_x2(const VerifyOptions& o)
{
    const Params p = Params::from_M(o.M);
    double worst = 0.0;
    for (SolutionKind kind : {SolutionKind::Jtype, SolutionKind::Itype})
        for (double lambda : {0.5, 1.3}) {
            const BoundaryExtraction e = extract_boundary(solution(kind, lambda, p), p);
            const double expect = 16.0 * e.data.f0;
            worst = std::max(worst, std::fabs(e.form_with_x2 - expect) / std::fabs(expect));
        }
    return measured(worst, 1e-5);
}

CheckResult form_at_zero(const VerifyOptions& o)
{
    const Params p = Params::from_M(o.M);
    const FnBundle f = solution(SolutionKind::Jtype, 1.3, p), g = solution(SolutionKind::Itype, 0.7, p);
    const BoundaryData bf = boundary_data(f, p), bg = boundary_data(g, p);
    const double sym0 = limit_at_zero([&](long double x) { return symplectic_form(f, g, x, p); });
    const double expected = 8 * (bf.f0 * bg.f2 - bf.f2 * bg.f0);
    return measured(std::fabs(sym0 - expected) / std::fabs(expected), 1e-5);
}

CheckResult antisymmetry(const VerifyOptions& o)
{
    const Params p = Params::from_M(o.M);
    const FnBundle j = solution(SolutionKind::Jtype, 1.0, p), k = solution(SolutionKind::Ktype, 1.0, p);
    double worst = 0.0;
    for (long double x : {0.3L, 2.0L, 7.0L}) {
        const long double a = symplectic_form(j, k, x, p), b = symplectic_form(k, j, x, p);
        worst = std::max(worst, static_cast<double>(std::fabs(a + b) / (1.0L + std::fabs(a))));
    }
    return measured(worst, 1e-15);
}

CheckResult green_constancy(const VerifyOptions& o)
{
    const Params p = Params::from_M(o.M);
    const FnBundle j = solution(SolutionKind::Jtype, 1.0, p), y = solution(SolutionKind::Ytype, 1.0, p);
    const double ref = static_cast<double>(symplectic_form(j, y, 0.5L, p));
    double worst = 0.0;
    for (double x : linear_points(0.2, 10.0, 30))
        worst = std::max(worst, std::fabs(static_cast<double>(symplectic_form(j, y, x, p)) - ref) / std::fabs(ref));
    return measured(worst, 1e-7);
}

CheckResult greens_defect(const VerifyOptions& o)
{
    const Params p = Params::from_M(o.M);
    const double t = quad_tol(o, 1e-7);
    const FnBundle j = solution(SolutionKind::Jtype, 1.0, p), k = solution(SolutionKind::Ktype, 1.0, p),
                   i = solution(SolutionKind::Itype, 0.7, p);
    const double d = std::max(greens_check(j, k, 0.5, 3.0, p, t), greens_check(i, k, 0.5, 3.0, p, t));
    return measured(d, 1e-7, "on [0.5, 3]");
}

CheckResult dirichlet_defect(const VerifyOptions& o)
{
    const Params p = Params::from_M(o.M);
    const double t = quad_tol(o, 1e-7);
    const FnBundle j = solution(SolutionKind::Jtype, 1.0, p), i = solution(SolutionKind::Itype, 0.7, p);
    const double d = std::max(dirichlet_check(j, i, 0.5, 3.0, p, t), dirichlet_check(i, j, 0.5, 3.0, p, t));
    return measured(d, 1e-7, "on [0.5, 3]");
}

CheckResult energy_identity(const VerifyOptions& o)
{
    const Params p = Params::from_M(o.M);
    double worst = 0.0;
    for (double mu : {-1.0, -4.0 / (o.M * o.M)}) {
        const EigenCandidate c = decaying_regular_solution(mu, p);
        FnBundle f = c.fn;
        f.boundary = c.boundary;
        const double inner = operator_inner(f, 1e-6, 80.0, p, 1e-10);
        const double energy = dirichlet_integral(f, 1e-6, 80.0, p, 1e-10);
        const double boundary = 8.0 * c.boundary.f2 * c.boundary.f0;
        worst = std::max(worst, std::fabs(inner - boundary - energy) / std::fabs(energy));
    }
    return measured(worst, 1e-5, "(T1 f, f) - 8 f''(0) f(0) - D(f) on decaying regular solutions");
}

CheckResult positivity_T0(const VerifyOptions& o)
{
    double worst = 0.0, min_inner = INFINITY;
    for (double M : {o.M, 0.5}) {
        const Params p = Params::from_M(M);
        for (const NamedBundle& f : positivity_suite(p)) {
            const double inner = operator_inner(f.fn, 1e-8, f.end, p, 1e-11);
            min_inner = std::min(min_inner, inner);
            worst = std::max(worst, -inner);
        }
    }
    return measured(worst, 1e-8, "min (T0 f, f) over the 10-function suite = " + format(min_inner));
}

CheckResult positivity_Sk(const VerifyOptions& o)
{
    const Params p = Params::from_M(o.M);
    double worst = 0.0, min_inner = INFINITY;
    std::vector<NamedBundle> functions = positivity_suite(p);
    for (NamedBundle& f : sk_examples(p))
        functions.push_back(std::move(f));
    for (double k : {0.5, o.M / 2.0})
        for (const NamedBundle& f : functions) {
            const double inner = sk_inner(f.fn, k, 1e-8, f.end, p, 1e-11);
            min_inner = std::min(min_inner, inner);
            worst = std::max(worst, -inner);
        }
    return measured(worst, 1e-8, "min (S_k f, f) for k = 0.5, M/2 = " + format(min_inner));
}

// ---- spectral ----------------------------------------------------------

struct ExtensionSweep {
    double residual = 0.0, condition = 0.0, min_separation = INFINITY, min_alpha = INFINITY;
};

ExtensionSweep extension_sweep(const Params& p)
{
    ExtensionSweep s;
    std::vector<ExtensionParams> seen;
    // the decay window (-16/M^2, 0) scales with 1/M^2
    const double scale = 1.0 / (p.M * p.M);
    for (double m : log_points(1e-3 * scale, 15.0 * scale, 20)) {
        const EigenCandidate c = decaying_regular_solution(-m, p);
        const ExtensionParams e = extension_for_eigenvalue(-m, p);
        s.residual = std::max(s.residual, c.residual);
        s.condition = std::max(s.condition, std::fabs(extension_boundary_condition(e, c.boundary)));
        s.min_alpha = std::min(s.min_alpha, std::fabs(e.alpha));
        for (const ExtensionParams& q : seen)
            s.min_separation = std::min(s.min_separation, std::hypot(q.alpha - e.alpha, q.beta - e.beta));
        seen.push_back(e);
    }
    return s;
}

CheckResult extension_residual(const VerifyOptions& o) { return measured(extension_sweep(Params::from_M(o.M)).residual, 1e-6); }
CheckResult extension_condition(const VerifyOptions& o) { return measured(extension_sweep(Params::from_M(o.M)).condition, 1e-8); }
CheckResult extension_distinct(const VerifyOptions& o)
{
    const double sep = extension_sweep(Params::from_M(o.M)).min_separation;
    return measured(1e-6 / sep, 1.0, "min pairwise separation = " + format(sep));
}
CheckResult extension_alpha(const VerifyOptions& o)
{
    const double a = extension_sweep(Params::from_M(o.M)).min_alpha;
    CheckResult r = measured(a > 0.0 ? 0.0 : 1.0, 0.0, "min |alpha| = " + format(a));
    return r;
}

CheckResult sk_scan(const VerifyOptions& o)
{
    const Params p = Params::from_M(o.M);
    std::vector<double> mus;
    for (double m : log_points(1e-2 / (o.M * o.M), 15.0 / (o.M * o.M), 10))
        mus.push_back(-m);
    int bad = 0;
    double min_defect = INFINITY;
    for (double k : {0.5, o.M / 2.0, 2.0}) {
        const SkScanReport r = sk_no_eigenvalue_scan(k, p, mus);
        for (const SkScanEntry& e : r.entries) {
            if (e.tested)
                min_defect = std::min(min_defect, e.defect);
            if (e.tested && !e.passed)
                ++bad;
        }
    }
    return violations(bad, "min normalized defect = " + format(min_defect));
}

CheckResult oscillation(const VerifyOptions& o)
{
    const Params p = Params::from_M(o.M);
    double least = INFINITY;
    for (double Lambda : {1.0, 4.0, 25.0})
        least = std::min(least, oscillation_envelope(Lambda, p));
    return measured(0.1 / least, 1.0, "min envelope on [50, 100] = " + format(least));
}

// ---- transforms --------------------------------------------------------

struct SuiteDefects {
    double parseval = 0.0, moment = 0.0, roundtrip = 0.0, roundtrip_zero = 0.0;
};

SuiteDefects suite_defects()
{
    static const SuiteDefects cached = [] {
        SuiteDefects d;
        const std::vector<TestFunction> suite = load_test_functions(default_fixture_path());
        for (double M : {0.5, 1.0, 2.0})
            for (const TestFunction& t : suite) {
                const GeneralizedChecks c = generalized_checks(t.measurable(), Params::from_M(M), {0.5, 1.0, 2.0}, t.support_end);
                d.parseval = std::max(d.parseval, std::fabs(c.parseval_lhs - c.parseval_rhs) / c.parseval_rhs);
                d.moment = std::max(d.moment, std::fabs(c.moment - c.f0));
                for (std::size_t i = 0; i < c.x_points.size(); ++i) {
                    const double e = std::fabs(c.roundtrip[i] - c.expected[i]);
                    if (c.x_points[i] == 0.0)
                        d.roundtrip_zero = std::max(d.roundtrip_zero, e);
                    else
                        d.roundtrip = std::max(d.roundtrip, e);
                }
            }
        return d;
    }();
    return cached;
}

CheckResult parseval(const VerifyOptions&) { return measured(suite_defects().parseval, 1e-4, "relative, 3 fixtures x M in {0.5, 1, 2}"); }
CheckResult moment(const VerifyOptions&) { return measured(suite_defects().moment, 1e-4); }
CheckResult roundtrip(const VerifyOptions&) { return measured(suite_defects().roundtrip, 1e-3, "x in {0.5, 1, 2}"); }
CheckResult roundtrip_zero(const VerifyOptions&) { return measured(suite_defects().roundtrip_zero, 1e-3); }

CheckResult vanishing(const VerifyOptions& o)
{
    double worst = 0.0;
    for (double eta : {0.5, 1.0, 5.0})
        for (double M : {0.5, 1.0, 2.0})
            worst = std::max(worst, std::fabs(vanishing_moment(eta, Params::from_M(M), quad_tol(o, 1e-5))));
    return measured(worst, 1e-5);
}

double phi_bump(double mu)
{
    const double u = (mu - 1.1) / 0.6;
    return std::fabs(u) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - u * u)) : 0.0;
}

CheckResult delta_classical(const VerifyOptions&)
{
    return measured(std::fabs(delta_family_classical(1.0, 200.0, phi_bump, 0.5, 1.7) - phi_bump(1.0)), 2e-2, "lambda = 1, X = 200");
}

CheckResult delta_generalized(const VerifyOptions& o)
{
    return measured(std::fabs(delta_family_generalized(1.0, Params::from_M(o.M), 200.0, phi_bump, 0.5, 1.7) - phi_bump(1.0)), 2e-2,
                    "lambda = 1, X = 200");
}

CheckResult kernel_limit(const VerifyOptions&)
{
    const double classical = ortho_kernel_classical(1.0, 2.0, 50.0);
    double prev = INFINITY;
    int bad = 0;
    std::string trail;
    for (double M : {1.0, 0.1, 0.01}) {
        const double d = std::fabs(ortho_kernel_generalized(1.0, 2.0, Params::from_M(M), 50.0) - classical);
        bad += !(d < prev);
        prev = d;
        trail += (trail.empty() ? "" : ", ") + format(d);
    }
    return violations(bad, "defects at (1, 2, 50) over M = 1, 0.1, 0.01: " + trail);
}

CheckResult cesaro(const VerifyOptions&) { return measured(std::fabs(cesaro_classical(1.0, 2.0, 50.0, 100.0)), 1e-2); }

// ---- plate equation ----------------------------------------------------

CheckResult separation(const VerifyOptions& o)
{
    double worst = 0.0;
    for (SolutionKind kind : {SolutionKind::Jtype, SolutionKind::Ktype}) {
        const SeparatedSolution u = SeparatedSolution::from_handle(SolutionHandle(kind, 1.0, Params::from_M(o.M)), 0.8, 0.6);
        for (double r : linear_points(0.2, 5.0, 10))
            for (double theta : linear_points(0.0, 2 * pi * 7.0 / 8.0, 8))
                worst = std::max(worst, apply_plum(u, r, theta).relative());
    }
    return measured(worst, 1e-5, "10 x 8 polar grid, r in [0.2, 5]");
}

CheckResult criticality(const VerifyOptions&)
{
    const int bad = !angular_criticality_check(4.0) + angular_criticality_check(1.0) + angular_criticality_check(0.0);
    return violations(bad, "expects true at c = 4 and false at c = 1, 0");
}

CheckResult plum_linearity(const VerifyOptions& o)
{
    const Params p = Params::from_M(o.M);
    const FnBundle a = solution(SolutionKind::Jtype, 1.0, p), b = solution(SolutionKind::Itype, 0.5, p);
    const SeparatedSolution ua{a, 0.3, 0.9, p, 0.0}, ub{b, 0.3, 0.9, p, 0.0};
    const SeparatedSolution uab{sum({{1.0L, a}, {-0.7L, b}}), 0.3, 0.9, p, 0.0};
    double worst = 0.0;
    for (double r : {0.3, 1.1, 4.0})
        for (double theta : {0.2, 2.0}) {
            const double lhs = apply_plum(uab, r, theta).value;
            const double rhs = apply_plum(ua, r, theta).value - 0.7 * apply_plum(ub, r, theta).value;
            worst = std::max(worst, std::fabs(lhs - rhs) / (1.0 + std::fabs(lhs)));
        }
    return measured(worst, 1e-12);
}

CheckResult theta_uniform(const VerifyOptions& o)
{
    const SeparatedSolution u = SeparatedSolution::from_handle(SolutionHandle(SolutionKind::Itype, 1.5, Params::from_M(o.M)), 1.0, 0.5);
    double worst = 0.0;
    for (double r : {0.3, 1.0, 4.0}) {
        const double ref = apply_plum(u, r, 0.1).value / u.angular(0.1);
        for (double theta : {0.4, 1.0, 2.5, 5.0})
            worst = std::max(worst, std::fabs(apply_plum(u, r, theta).value / u.angular(theta) - ref) / std::fabs(ref));
    }
    return measured(worst, 1e-12);
}

} // namespace

const std::vector<InvariantCheck>& invariant_registry()
{
    static const std::vector<InvariantCheck> registry{
        {"classical_bessel.wronskian", "J0 Y0' - Y0 J0' = 2/(pi x), relative, x in [1e-3, 50]", wronskian},
        {"classical_bessel.ode_residual", "Bessel equation residual for J, Y, I, K of orders 0 and 1", bessel_residual},
        {"classical_bessel.k_decay", "K0 positive and strictly decreasing on [1e-3, 600]", k_positive_decreasing},
        {"bessel_type.ode_residual", "all four solutions solve the equation, (lambda, M) in {0.5, 1, 2} x {0.5, 1, 4}", ode_residual},
        {"bessel_type.normalization", "regular solutions equal 1 at the origin (series path)", normalization},
        {"bessel_type.classical_limit", "max |J_1(x) - J0(x)| on [0.1, 10] decreases as M -> 0", classical_limit},
        {"bessel_type.basis", "the four solutions are independent (scaled determinant > 1e-12)", basis},
        {"bessel_type.realness", "solutions are finite reals over lambda in {0.1, 1, 5}", realness},
        {"bessel_type.k_decay", "Ktype e^{cx/2} decreases to 0 over x = 20, 40, 80", k_decay},
        {"frobenius.indicial_roots", "indicial roots of orders 4, 6, 8 are exact and parameter free", indicial},
        {"frobenius.y4_coefficients", "y4 has a0 = 1 and a2 = 1/(3M)", y4_coefficients},
        {"frobenius.y4_residual", "truncated y4 substitution residual at x = 0.1", y4_residual},
        {"measures.n_mass", "total mass of n is 2/M", n_mass},
        {"measures.mk_consistency", "m_k minus its atom equals the weighted Lebesgue measure", mk_consistency},
        {"quadrature.honest_estimates", "adaptive quadrature error estimates bound the true error", quadrature_honesty},
        {"forms.boundary_constant", "|[1, x^2](0+)| = 16", form_constant},
        {"forms.form_with_one", "[f, 1](0+) = -8 f''(0) on regular solutions", form_with_one},
        {"forms.form_with_x2", "[f, x^2](0+) = 16 f(0) on regular solutions", form_with_x2},
        {"forms.form_at_zero", "[f, g](0+) = 8 (f(0) g''(0) - f''(0) g(0))", form_at_zero},
        {"forms.antisymmetry", "[f, g] = -[g, f]", antisymmetry},
        {"forms.green_constancy", "[J, Y](x) constant on [0.2, 10]", green_constancy},
        {"forms.greens_defect", "Green's formula defect on [0.5, 3]", greens_defect},
        {"forms.dirichlet_defect", "Dirichlet formula defect on [0.5, 3]", dirichlet_defect},
        {"forms.energy_identity", "(T1 f, f) = 8 f''(0) f(0) + Dirichlet integral", energy_identity},
        {"forms.positivity_T0", "(T0 f, f) >= 0 for f(0) = f''(0) = 0", positivity_T0},
        {"forms.positivity_Sk", "(S_k f, f) >= 0 for k in {0.5, M/2}", positivity_Sk},
        {"spectral.candidate_residual", "decaying regular solutions solve the equation, 20 mu in (-15, -1e-3)/M^2", extension_residual},
        {"spectral.boundary_condition", "each candidate satisfies its extension's boundary condition", extension_condition},
        {"spectral.distinct_extensions", "mu -> (alpha : beta) is injective on the grid", extension_distinct},
        {"spectral.alpha_nonzero", "no candidate lies in the Friedrichs domain", extension_alpha},
        {"spectral.sk_no_eigenvalue", "S_k has no eigenvalue on sampled negative mu", sk_scan},
        {"spectral.oscillation", "positive Lambda solutions oscillate without decay on [50, 100]", oscillation},
        {"transforms.parseval", "int |g|^2 dn = (M/2) f(0)^2 + int x f^2", parseval},
        {"transforms.moment", "int g dn = f(0)", moment},
        {"transforms.roundtrip", "inverse of forward recovers f at continuity points", roundtrip},
        {"transforms.roundtrip_zero", "inverse of forward recovers f(0)", roundtrip_zero},
        {"transforms.vanishing_moment", "int J_lambda(eta) dn = 0, (eta, M) in {0.5, 1, 5} x {0.5, 1, 2}", vanishing},
        {"transforms.delta_classical", "classical kernel against a bump reproduces phi(1)", delta_classical},
        {"transforms.delta_generalized", "generalized kernel against a bump reproduces phi(1)", delta_generalized},
        {"transforms.kernel_limit", "generalized kernel tends to the classical one as M -> 0", kernel_limit},
        {"transforms.cesaro", "Cesaro mean of the classical kernel off the diagonal vanishes", cesaro},
        {"plum.separation", "P[v w] = Lambda v w for Jtype and Ktype radial parts", separation},
        {"plum.criticality", "the angular constant 4 is the only one that separates", criticality},
        {"plum.linearity", "P is linear", plum_linearity},
        {"plum.theta_uniform", "P[v w] / w is independent of theta", theta_uniform},
    };
    return registry;
}

CheckResult run_invariant(const std::string& id, const VerifyOptions& options)
{
    for (const InvariantCheck& c : invariant_registry()) {
        if (c.id != id)
            continue;
        const auto start = std::chrono::steady_clock::now();
        CheckResult r;
        try {
            r = c.run(options);
        } catch (const ConvergenceError& e) {
            r = CheckResult{};
            r.measured = NAN;
            r.nonconvergence = true;
            r.detail = std::string("no convergence: ") + e.what();
        } catch (const std::exception& e) {
            r = CheckResult{};
            r.measured = NAN;
            r.passed = false;
            r.detail = std::string("error: ") + e.what();
        }
        r.id = c.id;
        r.description = c.description;
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return r;
    }
    throw DomainError("unknown invariant id '" + id + "'");
}

std::vector<CheckResult> run_verification(const VerifyOptions& options, const std::vector<std::string>& prefixes)
{
    if (!(options.M > 0.0))
        throw DomainError("verification: M must be positive");
    if (!(options.tol > 0.0))
        throw DomainError("verification: tol must be positive");
    std::vector<CheckResult> out;
    for (const InvariantCheck& c : invariant_registry()) {
        bool wanted = prefixes.empty();
        for (const std::string& p : prefixes)
            wanted = wanted || c.id.rfind(p, 0) == 0;
        if (wanted)
            out.push_back(run_invariant(c.id, options));
    }
    return out;
}

} // namespace bessel4
