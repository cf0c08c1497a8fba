#pragma once

#include <array>
#include <vector>

#include "bessel4/classical_bessel.hpp"
#include "bessel4/jet.hpp"
#include "bessel4/log_series.hpp"

namespace bessel4 {

/// Model parameter M > 0 together with gamma = 8/M.
struct Params {
    double M = 1.0;
    double gamma = 8.0;

    static Params from_M(double M);
};

enum class SolutionKind { Jtype, Ytype, Itype, Ktype };

struct CDPair {
    double c;
    double d;
};

/// Spectral parameter lambda^2 (lambda^2 + 8/M).
double lambda_to_Lambda(double lambda, const Params& params);
/// c = sqrt(lambda^2 + 8/M), d = 1 + M lambda^2 / 4.
CDPair cd_params(double lambda, const Params& params);

/// One summand  a Z0(s x) + b x^{-1} Z1(s x).
struct BesselPiece {
    BesselFamily family;
    long double scale;
    long double a;
    long double b;
};

/// A finite sum of BesselPiece terms, evaluated with its derivatives.
///
/// Below x = 2 / max(scale) the merged log-power series is used (the
/// x^{-1} Z1 terms cancel against Z0 there); above it each piece is
/// differentiated symbolically with the order-0/1 recurrences.
class BesselCombination {
public:
    static constexpr int max_derivative = 4;

    BesselCombination() = default;
    explicit BesselCombination(std::vector<BesselPiece> pieces, int series_terms = 24);

    long double value(long double x) const;
    /// out[0..max_order] = f, f', ..., f^(max_order).
    void derivatives(long double x, int max_order, long double* out) const;
    Jet jet(long double x, int order) const;

    const LogPowerSeries& small_series() const { return series_[0]; }
    long double series_radius() const { return radius_; }
    const std::vector<BesselPiece>& pieces() const { return pieces_; }

    /// Same function with its small-argument series replaced (used once a
    /// cancellation in the series has been verified and made exact).
    BesselCombination with_series(const LogPowerSeries& series) const;

private:
    struct Term {
        long double coeff;
        int power;
        int which; // 0 -> Z0(sx), 1 -> Z1(sx)
    };

    bool defined_at_zero() const;

    std::vector<BesselPiece> pieces_;
    std::array<LogPowerSeries, max_derivative + 1> series_;
    // terms_[piece][order]
    std::vector<std::array<std::vector<Term>, max_derivative + 1>> terms_;
    long double radius_ = 0.0L;
};

/// One of the four closed-form solutions with parameters (lambda, M).
class SolutionHandle {
public:
    SolutionHandle(SolutionKind kind, double lambda, Params params);

    SolutionKind kind() const { return kind_; }
    double lambda() const { return lambda_; }
    const Params& params() const { return params_; }
    double Lambda() const { return lambda_to_Lambda(lambda_, params_); }

    double value(double x) const;
    /// f, f', ..., f^(max_order) at x; max_order <= 4.
    std::vector<double> derivs(double x, int max_order) const;
    void derivs_ld(long double x, int max_order, long double* out) const;
    Jet jet(long double x, int order) const;

    const BesselCombination& combination() const { return comb_; }

private:
    void check_argument(long double x) const;

    SolutionKind kind_;
    double lambda_;
    Params params_;
    BesselCombination comb_;
};

const char* to_string(SolutionKind kind);

} // namespace bessel4
