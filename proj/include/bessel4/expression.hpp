#pragma once

#include <memory>
#include <string>

#include "bessel4/jet.hpp"

namespace bessel4 {

/// Closed-form expression in the variable x.
///
/// Grammar: numbers, x, pi, + - * / ^ (right-associative), unary minus,
/// parentheses and the functions exp, log, sin, cos, sqrt, bump, cutoff,
/// step. bump(u) = exp(1 - 1/(1 - u^2)) on |u| < 1 and 0 elsewhere;
/// cutoff(u) is the smooth step equal to 1 for u <= 0 and 0 for u >= 1;
/// step(u) is 1, 1/2, 0 for u <0, =0, >0 (derivatives taken as 0).
class Expression {
public:
    struct Node;

    /// Throws DomainError with the offending position on a syntax error.
    static Expression parse(const std::string& text);

    double operator()(double x) const;
    Jet operator()(const Jet& x) const;

    const std::string& text() const { return text_; }

private:
    Expression(std::shared_ptr<const Node> root, std::string text);

    std::shared_ptr<const Node> root_;
    std::string text_;
};

Jet bump(const Jet& u);
Jet smooth_cutoff(const Jet& u);

} // namespace bessel4
