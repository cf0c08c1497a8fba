#include "bessel4/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "bessel4/classical_bessel.hpp"
#include "bessel4/errors.hpp"
#include "bessel4/forms.hpp"

namespace bessel4 {

namespace {

using std::numbers::pi;

constexpr double truncation_schedule[] = {25.0, 50.0, 100.0, 200.0};
// t = s x panels of this width carry the tabulated J0, J1
constexpr double t_panel = pi / 2;
// below this s the panels are laid out in x instead
constexpr double s_switch = 8.0;
constexpr double x_panel = 0.2;

struct Panel15 {
    double nodes[15], kw[15], gw[15];
};

Panel15 panel(double a, double b)
{
    Panel15 p;
    kronrod_nodes(a, b, p.nodes, p.kw, p.gw);
    return p;
}

// J0, J1 at the Kronrod nodes of [k t_panel, (k + 1) t_panel], k = 0, 1, ...
struct BesselTable {
    int panels = 0;
    std::vector<double> t, j0, j1, kw, gw;
};

std::shared_ptr<const BesselTable> bessel_table(double t_max)
{
    static std::mutex mutex;
    static std::shared_ptr<const BesselTable> table = std::make_shared<BesselTable>();
    const std::lock_guard<std::mutex> lock(mutex);
    const int needed = static_cast<int>(std::ceil(t_max / t_panel)) + 1;
    if (table->panels >= needed)
        return table;
    auto grown = std::make_shared<BesselTable>(*table);
    const int target = std::max(needed, 2 * table->panels);
    for (int k = grown->panels; k < target; ++k) {
        const Panel15 p = panel(k * t_panel, (k + 1) * t_panel);
        for (int i = 0; i < 15; ++i) {
            const BesselPair b = bessel_pair(BesselFamily::J, p.nodes[i]);
            grown->t.push_back(p.nodes[i]);
            grown->j0.push_back(static_cast<double>(b.z0));
            grown->j1.push_back(static_cast<double>(b.z1));
            grown->kw.push_back(p.kw[i]);
            grown->gw.push_back(p.gw[i]);
        }
    }
    grown->panels = target;
    table = grown;
    return table;
}

HankelMoments::Value fresh_panel(const RealFn& f, double s, double a, double b)
{
    const Panel15 p = panel(a, b);
    HankelMoments::Value v;
    double g0 = 0.0, g1 = 0.0;
    for (int i = 0; i < 15; ++i) {
        const double x = p.nodes[i];
        const double fx = f(x);
        if (fx == 0.0)
            continue;
        const BesselPair bp = bessel_pair(BesselFamily::J, s * x);
        const double a0 = x * static_cast<double>(bp.z0) * fx, a1 = static_cast<double>(bp.z1) * fx;
        v.h0 += p.kw[i] * a0;
        v.h1 += p.kw[i] * a1;
        g0 += p.gw[i] * a0;
        g1 += p.gw[i] * a1;
    }
    v.error = std::fabs(v.h0 - g0) + std::fabs(v.h1 - g1);
    return v;
}

double n_weight(double lambda, const Params& p) { return n_density(lambda, p); }

struct GeneralizedCoefficients {
    double d, b;
};

GeneralizedCoefficients coefficients(double lambda, const Params& p)
{
    return {1.0 + p.M * lambda * lambda / 4.0, -p.M * lambda / 2.0};
}

// J2(t) without the cancellation of 2 J1/t - J0 at small t
long double bessel_j2(long double t, const BesselPair& b)
{
    if (t < 2.0L) {
        const long double q = t * t / 4.0L;
        long double term = q / 2.0L, sum = 0.0L;
        for (int k = 0; k < 30; ++k) {
            sum += term;
            term *= -q / ((k + 1.0L) * (k + 3.0L));
        }
        return sum;
    }
    return 2.0L * b.z1 / t - b.z0;
}

// Lazily tabulated g on Kronrod panels of width h in lambda.
class LambdaTable {
public:
    LambdaTable(RealFn g, double h) : g_(std::move(g)), h_(h) {}

    double width() const { return h_; }

    const Panel15& nodes(int k)
    {
        ensure(k);
        return panels_[k];
    }
    const std::vector<double>& values(int k)
    {
        ensure(k);
        return values_[k];
    }

private:
    void ensure(int k)
    {
        while (static_cast<int>(panels_.size()) <= k) {
            const int j = static_cast<int>(panels_.size());
            panels_.push_back(panel(j * h_, (j + 1) * h_));
            std::vector<double> v(15);
            for (int i = 0; i < 15; ++i)
                v[i] = g_(panels_.back().nodes[i]);
            values_.push_back(std::move(v));
        }
    }

    RealFn g_;
    double h_;
    std::vector<Panel15> panels_;
    std::vector<std::vector<double>> values_;
};

// Mean over truncation points Lambda' in [Lambda/2, Lambda] of the partial
// integrals int_0^Lambda' integrand(lambda, g(lambda)) dlambda, escalating
// Lambda through the schedule until successive means differ by < tol.
struct Escalated {
    double value = 0.0, change = 0.0, truncation = 0.0;
    bool converged = false;
};

template <class Integrand>
Escalated escalate(LambdaTable& table, Integrand integrand, double tol)
{
    Escalated out;
    double partial = 0.0;
    int k = 0;
    std::vector<double> partials; // partial integral at (k + 1) h
    bool have_prev = false;
    double prev = 0.0;
    for (double L : truncation_schedule) {
        const int panels = static_cast<int>(std::lround(L / table.width()));
        for (; k < panels; ++k) {
            const Panel15& p = table.nodes(k);
            const std::vector<double>& g = table.values(k);
            for (int i = 0; i < 15; ++i)
                partial += p.kw[i] * integrand(p.nodes[i], g[i]);
            partials.push_back(partial);
        }
        double mean = 0.0;
        int count = 0;
        for (int j = panels / 2; j < panels; ++j) {
            mean += partials[j];
            ++count;
        }
        mean /= count;
        out.value = mean;
        out.truncation = L;
        if (have_prev) {
            out.change = std::fabs(mean - prev);
            if (out.change < tol) {
                out.converged = true;
                return out;
            }
        }
        prev = mean;
        have_prev = true;
    }
    return out;
}

double choose_truncation(const RealFn& f, double support_end, double tol, double weight_bound, bool& ok)
{
    ok = true;
    if (support_end > 0.0)
        return support_end;
    for (double X : truncation_schedule) {
        const RealFn tail = [&](double x) { return (1.0 + x) * std::fabs(f(x)); };
        const QuadResult q = adaptive_quad(tail, X, 2.0 * X, 1e-3 * tol);
        if (q.value * weight_bound <= tol)
            return X;
    }
    ok = false;
    return truncation_schedule[3];
}

double lambda_panel_width(const std::vector<double>& x_grid)
{
    double xmax = 0.0;
    for (double x : x_grid)
        xmax = std::max(xmax, x);
    // at most about one oscillation of J_lambda(x) per panel
    const int m = std::max(1, static_cast<int>(std::ceil(2.5 * xmax / (2 * pi))));
    return 2.5 / m;
}

} // namespace

HankelMoments::HankelMoments(RealFn f, double support_end, double tol, double weight_bound) : f_(std::move(f))
{
    if (!f_)
        throw DomainError("HankelMoments: missing evaluator");
    bool ok = true;
    X_ = choose_truncation(f_, support_end, tol, weight_bound, ok);
    if (!ok)
        throw ConvergenceError("HankelMoments: tail does not fall below tolerance by X = 200", X_);
}

HankelMoments::Value HankelMoments::operator()(double s) const
{
    if (s < 0.0)
        throw DomainError("HankelMoments: s must be >= 0");
    Value v;
    if (s < s_switch) {
        const int n = std::max(1, static_cast<int>(std::ceil(X_ / x_panel)));
        const double h = X_ / n;
        for (int k = 0; k < n; ++k) {
            const Value p = fresh_panel(f_, s, k * h, (k + 1) * h);
            v.h0 += p.h0;
            v.h1 += p.h1;
            v.error += p.error;
        }
        return v;
    }
    const double t_end = s * X_;
    const auto table = bessel_table(t_end);
    const int full = static_cast<int>(std::floor(t_end / t_panel));
    double g0 = 0.0, g1 = 0.0;
    const std::size_t count = static_cast<std::size_t>(full) * 15;
    for (std::size_t i = 0; i < count; ++i) {
        const double x = table->t[i] / s;
        const double fx = f_(x);
        const double a0 = x * table->j0[i] * fx, a1 = table->j1[i] * fx;
        v.h0 += table->kw[i] * a0;
        v.h1 += table->kw[i] * a1;
        g0 += table->gw[i] * a0;
        g1 += table->gw[i] * a1;
    }
    // dt = s dx
    v.h0 /= s;
    v.h1 /= s;
    v.error = (std::fabs(v.h0 * s - g0) + std::fabs(v.h1 * s - g1)) / s;
    const double x_done = full * t_panel / s;
    if (x_done < X_) {
        const Value p = fresh_panel(f_, s, x_done, X_);
        v.h0 += p.h0;
        v.h1 += p.h1;
        v.error += p.error;
    }
    return v;
}

TransformResult hankel_forward(const MeasurableFn& f, const std::vector<double>& s_grid, double tol)
{
    if (!f.eval)
        throw DomainError("hankel_forward: missing evaluator");
    TransformResult r;
    const RealFn fe = f.eval;
    auto transform = [fe, tol](double s, QuadResult& q) {
        if (s < 0.0)
            throw DomainError("hankel_forward: s must be >= 0");
        if (s == 0.0) {
            q = semi_infinite_quad([&](double x) { return x * fe(x); }, 0.0, tol);
        } else {
            const RealFn integrand = [&](double x) {
                const double fx = fe(x);
                return fx == 0.0 ? 0.0 : x * static_cast<double>(bessel_pair(BesselFamily::J, s * x).z0) * fx;
            };
            q = oscillatory_semi_infinite(integrand, pi / s, tol);
        }
        return q.value;
    };
    for (double s : s_grid) {
        QuadResult q;
        const double g = transform(s, q);
        r.grid.push_back(s);
        r.values.push_back(g);
        r.errors.push_back(q.error);
        r.converged.push_back(q.converged);
    }
    r.evaluator = [transform](double s) {
        QuadResult q;
        return transform(s, q);
    };
    // Parseval: int x f^2 against int s g^2 over tabulated g
    r.parseval_lhs = semi_infinite_quad([&](double x) {
        const double v = fe(x);
        return x * v * v;
    }, 0.0, 1e-12).value;
    const HankelMoments h(fe, 0.0, 1e-12);
    LambdaTable table([&h](double s) { return h(s).h0; }, 2.0);
    const Escalated e = escalate(table, [](double s, double g) { return s * g * g; }, 1e-10);
    r.parseval_rhs = e.value;
    r.truncation = h.truncation();
    return r;
}

double hankel_roundtrip(const MeasurableFn& f, double x_point, double support_end, double tol)
{
    if (!f.eval)
        throw DomainError("hankel_roundtrip: missing evaluator");
    if (!(x_point > 0.0))
        throw DomainError("hankel_roundtrip: x must be positive");
    const HankelMoments h(f.eval, support_end, 1e-12);
    const double reach = support_end > 0.0 ? support_end : 1.0;
    const double width = std::min(2.0, 2 * pi / (x_point + reach));
    const double w = 2.5 / std::ceil(2.5 / width);
    LambdaTable table([&h](double s) { return h(s).h0; }, w);
    const Escalated e = escalate(table, [x_point](double s, double g) {
        return s * static_cast<double>(bessel_pair(BesselFamily::J, s * x_point).z0) * g;
    }, tol);
    return e.value;
}

double regular_solution_value(double lambda, double x, const Params& params)
{
    if (lambda < 0.0 || x < 0.0)
        throw DomainError("regular_solution_value: lambda and x must be >= 0");
    if (x == 0.0 || lambda == 0.0)
        return 1.0;
    const long double t = static_cast<long double>(lambda) * x;
    const BesselPair b = bessel_pair(BesselFamily::J, t);
    // d J0 - (M lambda/2) J1/x = J0 - (M lambda^2/4) J2
    const long double q = static_cast<long double>(params.M) * lambda * lambda / 4.0L;
    return static_cast<double>(b.z0 - q * bessel_j2(t, b));
}

TransformResult generalized_forward(const MeasurableFn& f, const Params& params, const std::vector<double>& lambda_grid,
                                    double support_end, double tol)
{
    if (!f.eval)
        throw DomainError("generalized_forward: missing evaluator");
    // sqrt(int_0^200 (d + |B|)^2 dn) bounds the n-weighted effect of a change in H0, H1
    const QuadResult wq = adaptive_quad([&](double l) {
        const auto c = coefficients(l, params);
        const double s = c.d + std::fabs(c.b);
        return s * s * n_weight(l, params);
    }, 0.0, 200.0, 1e-6);
    const auto h = std::make_shared<HankelMoments>(f.eval, support_end, tol, std::sqrt(wq.value));
    const double atom = params.M / 2.0 * f.value_at_zero;
    const Params p = params;
    TransformResult r;
    r.truncation = h->truncation();
    r.evaluator = [h, atom, p](double l) {
        const auto c = coefficients(l, p);
        const HankelMoments::Value v = (*h)(l);
        return atom + c.d * v.h0 + c.b * v.h1;
    };
    for (double l : lambda_grid) {
        const auto c = coefficients(l, p);
        const HankelMoments::Value v = (*h)(l);
        r.grid.push_back(l);
        r.values.push_back(atom + c.d * v.h0 + c.b * v.h1);
        r.errors.push_back(c.d * v.error + std::fabs(c.b) * v.error);
        r.converged.push_back(true);
    }
    return r;
}

TransformResult generalized_inverse(const RealFn& g, const Params& params, const std::vector<double>& x_grid, double tol)
{
    if (!g)
        throw DomainError("generalized_inverse: missing evaluator");
    TransformResult r;
    LambdaTable table(g, lambda_panel_width(x_grid));
    for (double x : x_grid) {
        if (x < 0.0)
            throw DomainError("generalized_inverse: x must be >= 0");
        const Escalated e = escalate(table, [&](double l, double gl) {
            return regular_solution_value(l, x, params) * gl * n_weight(l, params);
        }, tol);
        r.grid.push_back(x);
        r.values.push_back(e.value);
        r.errors.push_back(e.change);
        r.converged.push_back(e.converged);
        r.truncation = std::max(r.truncation, e.truncation);
    }
    return r;
}

GeneralizedChecks generalized_checks(const MeasurableFn& f, const Params& params, const std::vector<double>& x_points,
                                     double support_end)
{
    GeneralizedChecks out;
    const TransformResult fwd = generalized_forward(f, params, {}, support_end, 1e-10);
    std::vector<double> xs{0.0};
    for (double x : x_points)
        if (x > 0.0)
            xs.push_back(x);
    LambdaTable table(fwd.evaluator, lambda_panel_width(xs));
    const RealFn fe = f.eval;
    out.f0 = f.value_at_zero;
    const double X = fwd.truncation;
    const QuadResult l2 = adaptive_quad([&](double x) {
        const double v = fe(x);
        return x * v * v;
    }, 0.0, X, 1e-13, EndpointSingularity::none, 4000, 1e-13);
    out.parseval_rhs = params.M / 2.0 * out.f0 * out.f0 + l2.value;
    out.parseval_lhs = escalate(table, [&](double l, double g) { return g * g * n_weight(l, params); }, 1e-9).value;
    out.moment = escalate(table, [&](double l, double g) { return g * n_weight(l, params); }, 1e-9).value;
    for (double x : xs) {
        const Escalated e = escalate(table, [&](double l, double g) {
            return regular_solution_value(l, x, params) * g * n_weight(l, params);
        }, 1e-6);
        out.x_points.push_back(x);
        out.roundtrip.push_back(e.value);
        out.expected.push_back(x == 0.0 ? out.f0 : fe(x));
    }
    return out;
}

double vanishing_moment(double eta, const Params& params, double tol)
{
    if (!(eta > 0.0))
        throw DomainError("vanishing_moment: eta must be positive (int dn = 2/M at eta = 0)");
    const RealFn integrand = [&](double l) { return regular_solution_value(l, eta, params) * n_weight(l, params); };
    const QuadResult q = oscillatory_semi_infinite(integrand, pi / eta, tol);
    if (!q.converged)
        throw ConvergenceError("vanishing_moment: acceleration did not settle", q.value);
    return q.value;
}

double ortho_kernel_classical(double lambda, double mu, double X)
{
    if (!(lambda > 0.0) || !(mu > 0.0) || !(X > 0.0))
        throw DomainError("ortho_kernel_classical: lambda, mu, X must be positive");
    if (std::fabs(lambda - mu) < 1e-6 * lambda) {
        const QuadResult q = adaptive_quad([&](double x) {
            return x * static_cast<double>(bessel_pair(BesselFamily::J, lambda * x).z0 * bessel_pair(BesselFamily::J, mu * x).z0);
        }, 0.0, X, 1e-12, EndpointSingularity::none, 20000, 1e-13);
        return lambda * q.value;
    }
    const BesselPair a = bessel_pair(BesselFamily::J, static_cast<long double>(lambda) * X);
    const BesselPair b = bessel_pair(BesselFamily::J, static_cast<long double>(mu) * X);
    const long double num = X * (lambda * a.z1 * b.z0 - mu * a.z0 * b.z1);
    return static_cast<double>(lambda * num / (static_cast<long double>(lambda) * lambda - static_cast<long double>(mu) * mu));
}

double ortho_kernel_generalized_quadrature(double lambda, double mu, const Params& params, double X)
{
    if (!(lambda > 0.0) || !(mu > 0.0) || !(X > 0.0))
        throw DomainError("ortho_kernel_generalized: lambda, mu, X must be positive");
    const QuadResult q = adaptive_quad([&](double x) {
        return x * regular_solution_value(lambda, x, params) * regular_solution_value(mu, x, params);
    }, 0.0, X, 1e-11, EndpointSingularity::none, 20000, 1e-13);
    const double t = 1.0 + params.M * lambda * lambda / 4.0;
    return lambda / (t * t) * (q.value + params.M / 2.0);
}

double ortho_kernel_generalized(double lambda, double mu, const Params& params, double X)
{
    if (!(lambda > 0.0) || !(mu > 0.0) || !(X > 0.0))
        throw DomainError("ortho_kernel_generalized: lambda, mu, X must be positive");
    const long double La = lambda_to_Lambda(lambda, params), Lb = lambda_to_Lambda(mu, params);
    if (std::fabs(La - Lb) < 1e-7L * (1.0L + La))
        return ortho_kernel_generalized_quadrature(lambda, mu, params, X);
    const FnBundle f = make_bundle(SolutionHandle(SolutionKind::Jtype, lambda, params));
    const FnBundle g = make_bundle(SolutionHandle(SolutionKind::Jtype, mu, params));
    // J_lambda''(0) = -lambda^2/2 - M lambda^4/16; both values at 0 are 1
    auto second = [&](long double l) { return -l * l / 2.0L - params.M * l * l * l * l / 16.0L; };
    const long double at_zero = 8.0L * (second(mu) - second(lambda));
    const long double integral = (symplectic_form(f, g, X, params) - at_zero) / (La - Lb);
    const double t = 1.0 + params.M * lambda * lambda / 4.0;
    return static_cast<double>(lambda / (t * t) * (integral + params.M / 2.0L));
}

double delta_family_classical(double lambda, double X, const RealFn& phi, double lo, double hi)
{
    const QuadResult q = adaptive_quad([&](double mu) {
        const double p = phi(mu);
        return p == 0.0 ? 0.0 : ortho_kernel_classical(lambda, mu, X) * p;
    }, lo, hi, 1e-9, EndpointSingularity::none, 20000);
    return q.value;
}

double delta_family_generalized(double lambda, const Params& params, double X, const RealFn& phi, double lo, double hi)
{
    const QuadResult q = adaptive_quad([&](double mu) {
        const double p = phi(mu);
        return p == 0.0 ? 0.0 : ortho_kernel_generalized(lambda, mu, params, X) * p;
    }, lo, hi, 1e-8, EndpointSingularity::none, 20000);
    return q.value;
}

double cesaro_classical(double lambda, double mu, double a, double b)
{
    const QuadResult q = adaptive_quad([&](double X) { return ortho_kernel_classical(lambda, mu, X); }, a, b, 1e-10);
    return q.value / (b - a);
}

} // namespace bessel4
