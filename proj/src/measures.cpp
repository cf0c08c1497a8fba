#include "bessel4/measures.hpp"

#include <cmath>

#include "bessel4/errors.hpp"

namespace bessel4 {

AtomDensityMeasure AtomDensityMeasure::mk(double k)
{
    if (!(k >= 0.0))
        throw DomainError("m_k: k must be non-negative");
    return {k, [](double x) { return x; }, MeasureLabel::mk, k};
}

AtomDensityMeasure AtomDensityMeasure::n(const Params& params)
{
    const Params p = params;
    return {0.0, [p](double l) { return n_density(l, p); }, MeasureLabel::n, p.M};
}

AtomDensityMeasure AtomDensityMeasure::lebesgue_x()
{
    return {0.0, [](double x) { return x; }, MeasureLabel::lebesgue_x, 0.0};
}

double n_density(double lambda, const Params& params)
{
    const double t = 1.0 + params.M * lambda * lambda / 4.0;
    return lambda / (t * t);
}

QuadResult integrate_dn(const RealFn& h, const Params& params, double tol)
{
    const RealFn f = [&](double l) { return h(l) * n_density(l, params); };
    return semi_infinite_quad(f, 0.0, tol, 10.0);
}

double inner_product(const MeasurableFn& f, const MeasurableFn& g, const AtomDensityMeasure& mu, double tol)
{
    double atom = 0.0;
    if (mu.atom_mass > 0.0)
        atom = mu.atom_mass * f.value_at_zero * g.value_at_zero;
    if (!f.eval || !g.eval)
        throw DomainError("inner_product: missing evaluator");
    const RealFn integrand = [&](double x) {
        const double fv = f.eval(x);
        if (fv == 0.0)
            return 0.0;
        return fv * g.eval(x) * mu.density(x);
    };
    const QuadResult q = semi_infinite_quad(integrand, 0.0, tol, 10.0);
    if (!q.converged || q.error > tol)
        throw ConvergenceError("inner_product: quadrature did not reach tolerance", atom + q.value);
    return atom + q.value;
}

} // namespace bessel4
