#include "bessel4/fixtures.hpp"

#include <fstream>
#include <sstream>

#include "bessel4/errors.hpp"
#include "bessel4/frobenius.hpp"

namespace bessel4 {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

FnBundle with_cutoff(const FnBundle& f, double start, double width)
{
    FnBundle chi;
    chi.eval = [start, width](long double x, int order) {
        return smooth_cutoff((Jet::variable(x, order) - start) * (1.0L / width));
    };
    chi.boundary = BoundaryData{1.0, 0.0};
    FnBundle out = product(f, chi);
    out.boundary = f.boundary;
    return out;
}

} // namespace

FnBundle expression_bundle(const Expression& e)
{
    FnBundle b;
    b.eval = [e](long double x, int order) { return e(Jet::variable(x, order)); };
    return b;
}

MeasurableFn TestFunction::measurable() const
{
    const Expression e = expr;
    return {e(0.0), [e](double x) { return e(x); }};
}

FnBundle TestFunction::bundle() const { return expression_bundle(expr); }

std::vector<TestFunction> parse_test_functions(const std::string& text)
{
    std::vector<TestFunction> out;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        std::vector<std::string> fields;
        std::stringstream ss(t);
        std::string field;
        while (std::getline(ss, field, '|'))
            fields.push_back(trim(field));
        if (fields.size() != 3 || fields[0].empty())
            throw DomainError("test functions: line " + std::to_string(number) + " needs 'name | expression | decay'");
        TestFunction f{fields[0], Expression::parse(fields[1])};
        const std::string& decay = fields[2];
        if (decay == "gaussian") {
            f.decay = DecayClass::gaussian;
        } else if (decay == "exponential") {
            f.decay = DecayClass::exponential;
        } else if (decay.rfind("compact:", 0) == 0) {
            f.decay = DecayClass::compact;
            try {
                f.support_end = std::stod(decay.substr(8));
            } catch (const std::exception&) {
                f.support_end = 0.0;
            }
            if (!(f.support_end > 0.0))
                throw DomainError("test functions: line " + std::to_string(number) + " has a bad support end");
        } else {
            throw DomainError("test functions: line " + std::to_string(number) + " has unknown decay class '" + decay + "'");
        }
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<TestFunction> load_test_functions(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw DomainError("test functions: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_test_functions(ss.str());
}

std::string default_fixture_path() { return std::string(BESSEL4_FIXTURE_DIR) + "/test_functions.txt"; }

std::vector<NamedBundle> positivity_suite(const Params& params)
{
    const std::pair<const char*, double> closed_forms[] = {
        {"x^4*exp(-x^2)", 12.0},
        {"x^4*exp(-x)", 80.0},
        {"x^6*exp(-x^2/2)", 16.0},
        {"x^4*(1+x^2)^(-4)", 400.0},
        {"(x^4 - x^6/5)*exp(-x^2)", 12.0},
        {"x^4*exp(-x^2)*cos(3*x)", 12.0},
        {"sin(x)^4*exp(-x^2)", 12.0},
        {"x^4*exp(-x^2) - 2*x^4*exp(-2*x^2)", 12.0},
    };
    std::vector<NamedBundle> out;
    for (const auto& [text, end] : closed_forms) {
        FnBundle b = expression_bundle(Expression::parse(text));
        b.boundary = BoundaryData{0.0, 0.0};
        out.push_back({text, b, end});
    }
    for (double Lambda : {1.0, 9.0}) {
        FnBundle y4 = make_bundle(y4_series(Lambda, params, 40));
        out.push_back({"y4(Lambda=" + std::to_string(static_cast<int>(Lambda)) + ")*cutoff(x-1)", with_cutoff(y4, 1.0, 1.0), 2.0});
    }
    return out;
}

std::vector<NamedBundle> sk_examples(const Params& params)
{
    const std::pair<double, double> weights[] = {{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {1.0, -0.5}, {-0.3, 1.0}};
    std::vector<NamedBundle> out;
    for (const auto& [a, b] : weights) {
        const SolutionHandle j(SolutionKind::Jtype, 1.0, params), i(SolutionKind::Itype, 0.5, params);
        FnBundle fj = make_bundle(j), fi = make_bundle(i);
        fj.boundary = boundary_data(fj, params);
        fi.boundary = boundary_data(fi, params);
        const FnBundle f = sum({{a, fj}, {b, fi}});
        std::ostringstream name;
        name << a << "*J + " << b << "*I";
        out.push_back({name.str(), with_cutoff(f, 1.0, 1.0), 2.0});
    }
    return out;
}

} // namespace bessel4
