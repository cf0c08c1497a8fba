#pragma once

#include <string>
#include <vector>

#include "bessel4/expression.hpp"
#include "bessel4/forms.hpp"
#include "bessel4/measures.hpp"

namespace bessel4 {

enum class DecayClass { gaussian, exponential, compact };

/// One line of the test-function file: `name | expression | decay class`.
struct TestFunction {
    std::string name;
    Expression expr;
    DecayClass decay = DecayClass::gaussian;
    double support_end = 0.0; // compact class only

    MeasurableFn measurable() const;
    FnBundle bundle() const;
};

/// Parses the plain-text fixture format; '#' starts a comment line.
/// Throws DomainError naming the line on malformed input.
std::vector<TestFunction> parse_test_functions(const std::string& text);
std::vector<TestFunction> load_test_functions(const std::string& path);
/// Path of the bundled fixture file.
std::string default_fixture_path();

FnBundle expression_bundle(const Expression& e);

/// Test function on (0, inf) with the point beyond which it is negligible.
struct NamedBundle {
    std::string name;
    FnBundle fn;
    double end = 0.0;
};

/// Ten smooth functions with f(0) = f''(0) = 0 (elementary closed forms
/// and smoothly cut-off y4 Frobenius solutions).
std::vector<NamedBundle> positivity_suite(const Params& params);

/// Cut-off combinations a J + b I of the regular solutions (nonzero
/// boundary data), chi = 1 on [0, 1] and 0 beyond 2.
std::vector<NamedBundle> sk_examples(const Params& params);

} // namespace bessel4
