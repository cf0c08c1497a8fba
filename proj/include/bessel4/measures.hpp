#pragma once

#include <functional>

#include "bessel4/bessel_type.hpp"
#include "bessel4/quadrature.hpp"

namespace bessel4 {

enum class MeasureLabel { mk, n, lebesgue_x };

/// Stieltjes measure on [0, inf): a point mass at 0 plus a density.
struct AtomDensityMeasure {
    double atom_mass = 0.0;
    RealFn density;
    MeasureLabel label = MeasureLabel::lebesgue_x;
    /// k for m_k, M for n, unused for lebesgue_x.
    double parameter = 0.0;

    /// Mass k at 0 plus density x.
    static AtomDensityMeasure mk(double k);
    /// Density lambda (1 + M lambda^2 / 4)^{-2}, no atom; total mass 2/M.
    static AtomDensityMeasure n(const Params& params);
    /// Density x, no atom.
    static AtomDensityMeasure lebesgue_x();
};

struct MeasurableFn {
    double value_at_zero = 0.0;
    RealFn eval;
};

/// atom f(0) g(0) + int_0^inf f g density, to absolute accuracy tol.
/// Throws ConvergenceError when the quadrature does not settle.
double inner_product(const MeasurableFn& f, const MeasurableFn& g, const AtomDensityMeasure& mu, double tol = 1e-8);

/// int_0^inf h(lambda) dn(lambda) for the measure n of `params`, with the
/// tail beyond lambda = 10 taken in u = 1/lambda.
QuadResult integrate_dn(const RealFn& h, const Params& params, double tol = 1e-8);

/// Density of n at lambda.
double n_density(double lambda, const Params& params);

} // namespace bessel4
