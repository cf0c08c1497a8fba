// Command-line front end: tables of solutions, series, transforms, spectra,
// the invariant suite and plate-equation residuals as CSV or JSON.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include "bessel4/errors.hpp"
#include "bessel4/fixtures.hpp"
#include "bessel4/frobenius.hpp"
#include "bessel4/plum.hpp"
#include "bessel4/spectral.hpp"
#include "bessel4/transforms.hpp"
#include "bessel4/verification.hpp"

using namespace bessel4;
using json = nlohmann::ordered_json;

namespace {

enum ExitCode { exit_pass = 0, exit_check_failure = 1, exit_usage = 2, exit_nonconvergence = 3 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GridSpec {
    double start = 0.0, stop = 0.0;
    int count = 1;
    bool log = false;

    // "start:stop:count[:linear|log]"; log spacing is in |x| and keeps the sign
    static GridSpec parse(const std::string& text)
    {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        std::string p;
        while (std::getline(ss, p, ':'))
            parts.push_back(p);
        if (parts.size() < 3 || parts.size() > 4)
            throw UsageError("grid '" + text + "' must be start:stop:count[:linear|log]");
        GridSpec g;
        try {
            std::size_t used = 0;
            g.start = std::stod(parts[0], &used);
            if (used != parts[0].size())
                throw std::invalid_argument("start");
            g.stop = std::stod(parts[1], &used);
            if (used != parts[1].size())
                throw std::invalid_argument("stop");
            g.count = std::stoi(parts[2], &used);
            if (used != parts[2].size())
                throw std::invalid_argument("count");
        } catch (const std::logic_error&) {
            throw UsageError("grid '" + text + "' has a malformed number");
        }
        if (g.count < 1)
            throw UsageError("grid count must be >= 1");
        if (parts.size() == 4) {
            if (parts[3] == "log")
                g.log = true;
            else if (parts[3] != "linear")
                throw UsageError("grid spacing must be 'linear' or 'log'");
        }
        if (g.log && !(g.start * g.stop > 0.0))
            throw UsageError("log grid endpoints must be nonzero with the same sign");
        return g;
    }

    std::vector<double> points() const
    {
        std::vector<double> out;
        for (int i = 0; i < count; ++i) {
            const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
            if (log)
                out.push_back(std::copysign(std::fabs(start) * std::pow(stop / start, t), start));
            else
                out.push_back(start + (stop - start) * t);
        }
        return out;
    }
};

// A table with a fixed column order, rendered as CSV (17 significant
// digits) or JSON, plus scalar diagnostics.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
    json diagnostics = json::object();
    bool passed = true;
    bool nonconvergence = false;
};

std::string csv_cell(const json& v)
{
    if (v.is_null())
        return "nan";
    if (v.is_boolean())
        return v.get<bool>() ? "true" : "false";
    if (v.is_number_float()) {
        std::ostringstream s;
        s << std::setprecision(17) << v.get<double>();
        return s.str();
    }
    if (v.is_number())
        return v.dump();
    const std::string text = v.get<std::string>();
    if (text.find_first_of(",\"\n") == std::string::npos)
        return text;
    std::string quoted = "\"";
    for (char c : text)
        quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
    return quoted + "\"";
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string render(const Table& t, const std::string& format)
{
    std::ostringstream out;
    if (format == "json") {
        json doc = json::object();
        json rows = json::array();
        for (const auto& r : t.rows) {
            json row = json::object();
            for (std::size_t i = 0; i < t.columns.size(); ++i)
                row[t.columns[i]] = r[i];
            rows.push_back(row);
        }
        doc["rows"] = rows;
        doc["diagnostics"] = t.diagnostics;
        doc["passed"] = t.passed;
        out << doc.dump(2) << "\n";
        return out.str();
    }
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        out << (i ? "," : "") << t.columns[i];
    out << "\n";
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i)
            out << (i ? "," : "") << csv_cell(r[i]);
        out << "\n";
    }
    for (const auto& [key, value] : t.diagnostics.items())
        out << "# " << key << "," << csv_cell(value) << "\n";
    return out.str();
}

struct Common {
    double M = 1.0;
    double tol = 0.0; // 0: the command's own default
    std::string format = "csv";
    std::string output;
};

void emit(const Table& t, const Common& c, const std::string& command)
{
    const std::string text = render(t, c.format);
    std::string path = c.output;
    if (path.empty()) {
        if (const char* dir = std::getenv("BESSEL4_OUTPUT_DIR"); dir && *dir) {
            std::filesystem::create_directories(dir);
            path = (std::filesystem::path(dir) / (command + "." + c.format)).string();
        }
    }
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw UsageError("cannot write " + path);
    f << text;
}

Params params_of(const Common& c)
{
    if (!(c.M > 0.0))
        throw UsageError("--M must be positive");
    if (c.tol < 0.0)
        throw UsageError("--tol must be positive");
    return Params::from_M(c.M);
}

double tolerance(const Common& c, double fallback) { return c.tol > 0.0 ? c.tol : fallback; }

SolutionKind parse_kind(const std::string& s)
{
    if (s == "J")
        return SolutionKind::Jtype;
    if (s == "Y")
        return SolutionKind::Ytype;
    if (s == "I")
        return SolutionKind::Itype;
    if (s == "K")
        return SolutionKind::Ktype;
    throw UsageError("--kind must be J, Y, I or K");
}

// ---- commands ----------------------------------------------------------

Table run_eval(const Common& c, double lambda, const GridSpec& grid)
{
    const Params p = params_of(c);
    if (lambda < 0.0)
        throw UsageError("--lambda must be >= 0");
    Table t;
    t.columns = {"x", "J", "Y", "I", "K"};
    const SolutionKind kinds[] = {SolutionKind::Jtype, SolutionKind::Ytype, SolutionKind::Itype, SolutionKind::Ktype};
    for (double x : grid.points()) {
        if (x < 0.0)
            throw UsageError("eval grid must be >= 0");
        std::vector<json> row{x};
        for (SolutionKind k : kinds) {
            const bool singular = x == 0.0 && (k == SolutionKind::Ytype || k == SolutionKind::Ktype);
            row.push_back(singular ? json(nullptr) : number(SolutionHandle(k, lambda, p).value(x)));
        }
        t.rows.push_back(row);
    }
    return t;
}

void add_series_rows(Table& t, const std::string& label, const FrobeniusSeries& s)
{
    const LogPowerSeries ls = s.to_log_series();
    for (int q = 0; q <= ls.max_log_degree(); ++q)
        for (int pw = ls.min_power(); pw <= ls.max_power(); ++pw) {
            const long double v = ls.coeff(pw, q);
            if (v != 0.0L)
                t.rows.push_back({"coefficient", label, s.root, pw, q, number(static_cast<double>(v))});
        }
}

Table run_series(const Common& c, int order, double Lambda, int terms)
{
    const Params p = params_of(c);
    if (order != 4 && order != 6 && order != 8)
        throw UsageError("--order must be 4, 6 or 8");
    if (terms < 1 || terms > 200)
        throw UsageError("--terms must be in [1, 200]");
    Table t;
    t.columns = {"kind", "solution", "root", "power", "log_degree", "value"};
    const OdeSpec spec = OdeSpec::bessel_type(order, p, Lambda);
    const std::vector<int> roots = indicial_roots(spec);
    for (int r : roots)
        t.rows.push_back({"indicial_root", "", r, json(nullptr), json(nullptr), r});
    if (order == 4) {
        add_series_rows(t, "y4", y4_series(Lambda, p, terms));
        for (const FrobeniusSeries& s : log_case_basis(Lambda, p, terms))
            add_series_rows(t, "y" + std::to_string(s.root), s);
    } else {
        add_series_rows(t, "y" + std::to_string(roots.front()), frobenius_solution(spec, roots.front(), terms));
    }
    t.diagnostics["order"] = order;
    t.diagnostics["Lambda"] = Lambda;
    t.diagnostics["M"] = c.M;
    return t;
}

TestFunction pick_function(const std::string& name, const std::string& expr, const std::string& fixture_file, double support)
{
    if (!expr.empty()) {
        TestFunction f{"expression", Expression::parse(expr)};
        f.support_end = support;
        f.decay = support > 0.0 ? DecayClass::compact : DecayClass::exponential;
        return f;
    }
    for (const TestFunction& f : load_test_functions(fixture_file.empty() ? default_fixture_path() : fixture_file))
        if (f.name == name)
            return f;
    throw UsageError("no test function named '" + name + "'");
}

Table run_transform(const Common& c, const TestFunction& f, const GridSpec& grid, bool classical)
{
    const double tol = tolerance(c, 1e-4);
    Table t;
    t.columns = {"lambda", "g", "error"};
    const MeasurableFn m = f.measurable();
    if (classical) {
        for (double s : grid.points())
            if (s < 0.0)
                throw UsageError("transform grid must be >= 0");
        const TransformResult r = hankel_forward(m, grid.points());
        for (std::size_t i = 0; i < r.grid.size(); ++i) {
            t.rows.push_back({r.grid[i], number(r.values[i]), number(r.errors[i])});
            t.nonconvergence = t.nonconvergence || !r.converged[i];
        }
        t.diagnostics["parseval_lhs"] = r.parseval_lhs;
        t.diagnostics["parseval_rhs"] = r.parseval_rhs;
        const double defect = std::fabs(r.parseval_lhs - r.parseval_rhs) / r.parseval_lhs;
        t.diagnostics["parseval_relative_defect"] = defect;
        t.passed = defect <= tol;
    } else {
        const Params p = params_of(c);
        for (double s : grid.points())
            if (s < 0.0)
                throw UsageError("transform grid must be >= 0");
        const TransformResult r = generalized_forward(m, p, grid.points(), f.support_end);
        for (std::size_t i = 0; i < r.grid.size(); ++i)
            t.rows.push_back({r.grid[i], number(r.values[i]), number(r.errors[i])});
        const GeneralizedChecks chk = generalized_checks(m, p, {}, f.support_end);
        const double defect = std::fabs(chk.parseval_lhs - chk.parseval_rhs) / chk.parseval_rhs;
        t.diagnostics["truncation_X"] = r.truncation;
        t.diagnostics["parseval_lhs"] = chk.parseval_lhs;
        t.diagnostics["parseval_rhs"] = chk.parseval_rhs;
        t.diagnostics["parseval_relative_defect"] = defect;
        t.diagnostics["moment"] = chk.moment;
        t.diagnostics["f0"] = chk.f0;
        t.diagnostics["moment_defect"] = std::fabs(chk.moment - chk.f0);
        t.passed = defect <= tol && std::fabs(chk.moment - chk.f0) <= tol;
    }
    t.diagnostics["function"] = f.name;
    t.diagnostics["expression"] = f.expr.text();
    t.diagnostics["tol"] = tol;
    return t;
}

Table run_inverse(const Common& c, const TestFunction& f, const GridSpec& grid)
{
    const Params p = params_of(c);
    const double tol = tolerance(c, 1e-3);
    const std::vector<double> xs = grid.points();
    for (double x : xs)
        if (x < 0.0)
            throw UsageError("inverse grid must be >= 0");
    const MeasurableFn m = f.measurable();
    const TransformResult g = generalized_forward(m, p, {}, f.support_end);
    const TransformResult back = generalized_inverse(g.evaluator, p, xs, 1e-6);
    Table t;
    t.columns = {"x", "f", "expected", "abs_error", "converged"};
    double worst = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double expected = xs[i] == 0.0 ? m.value_at_zero : m.eval(xs[i]);
        const double err = std::fabs(back.values[i] - expected);
        worst = std::max(worst, err);
        t.rows.push_back({xs[i], number(back.values[i]), number(expected), number(err), static_cast<bool>(back.converged[i])});
        t.nonconvergence = t.nonconvergence || !back.converged[i];
    }
    t.diagnostics["function"] = f.name;
    t.diagnostics["expression"] = f.expr.text();
    t.diagnostics["truncation_Lambda"] = back.truncation;
    t.diagnostics["max_abs_error"] = worst;
    t.diagnostics["tol"] = tol;
    t.passed = worst <= tol;
    return t;
}

Table run_spectrum(const Common& c, const GridSpec& grid)
{
    const Params p = params_of(c);
    Table t;
    t.columns = {"mu", "alpha", "beta", "residual", "boundary_condition"};
    for (double mu : grid.points()) {
        const EigenCandidate cand = decaying_regular_solution(mu, p);
        const ExtensionParams e = extension_for_eigenvalue(mu, p);
        const double bc = std::fabs(extension_boundary_condition(e, cand.boundary));
        t.rows.push_back({mu, e.alpha, e.beta, cand.residual, bc});
        t.passed = t.passed && e.alpha != 0.0 && cand.residual <= 1e-6 && bc <= 1e-8;
    }
    t.diagnostics["M"] = c.M;
    t.diagnostics["window"] = "mu in (-16/M^2, 0)";
    return t;
}

Table run_verify(const Common& c, const std::vector<std::string>& only)
{
    VerifyOptions o;
    o.M = params_of(c).M;
    o.tol = tolerance(c, 1e-5);
    Table t;
    t.columns = {"id", "passed", "measured", "threshold", "seconds", "description", "detail"};
    for (const CheckResult& r : run_verification(o, only)) {
        t.rows.push_back({r.id, r.passed, number(r.measured), r.threshold, r.seconds, r.description, r.detail});
        t.passed = t.passed && r.passed;
        t.nonconvergence = t.nonconvergence || r.nonconvergence;
    }
    if (t.rows.empty())
        throw UsageError("no invariant matches the --only prefixes");
    t.diagnostics["M"] = o.M;
    t.diagnostics["tol"] = o.tol;
    t.diagnostics["checks"] = t.rows.size();
    return t;
}

Table run_pde(const Common& c, SolutionKind kind, double lambda, double A, double B, const GridSpec& r_grid, int theta_count)
{
    const Params p = params_of(c);
    const double tol = tolerance(c, 1e-5);
    if (theta_count < 1)
        throw UsageError("--theta-count must be >= 1");
    const SeparatedSolution u = SeparatedSolution::from_handle(SolutionHandle(kind, lambda, p), A, B);
    Table t;
    t.columns = {"r", "theta", "value", "residual", "relative"};
    double worst = 0.0;
    for (double r : r_grid.points()) {
        if (!(r > 0.0))
            throw UsageError("pde-residual r grid must be positive");
        for (int k = 0; k < theta_count; ++k) {
            const double theta = 2.0 * 3.14159265358979323846 * k / theta_count;
            const PlumEvaluation e = apply_plum(u, r, theta);
            worst = std::max(worst, e.relative());
            t.rows.push_back({r, theta, number(e.value), number(e.residual), number(e.relative())});
        }
    }
    t.diagnostics["Lambda"] = u.Lambda;
    t.diagnostics["gamma"] = p.gamma;
    t.diagnostics["max_relative_residual"] = worst;
    t.diagnostics["tol"] = tol;
    t.passed = worst <= tol;
    return t;
}

int error_record(int code, const std::string& kind, const std::string& message)
{
    json rec = json::object();
    rec["error"] = {{"code", code}, {"kind", kind}, {"message", message}};
    std::cerr << rec.dump() << "\n";
    return code;
}

void add_common(CLI::App* cmd, Common& c, bool with_tol = true)
{
    cmd->add_option("--M", c.M, "Parameter M > 0")->capture_default_str();
    if (with_tol)
        cmd->add_option("--tol", c.tol, "Pass tolerance of the command's checks");
    cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    cmd->add_option("--output", c.output, "Output file (default: $BESSEL4_OUTPUT_DIR/<command>.<format>, else stdout)");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Fourth-order Bessel-type functions: evaluation, transforms and verification"};
    app.require_subcommand(1);
    Common common;
    std::string grid_text;
    double lambda = 1.0, Lambda = 1.0, A = 1.0, B = 0.0;
    int order = 4, terms = 12, theta_count = 8;
    std::string kind_text = "J", function_name = "gaussian", expr, fixture_file;
    double support = 0.0;
    bool classical = false;
    std::vector<std::string> only;

    auto* eval = app.add_subcommand("eval", "Table x, J, Y, I, K of the Bessel-type solutions");
    add_common(eval, common, false);
    eval->add_option("--lambda", lambda, "Spectral parameter lambda >= 0")->capture_default_str();
    eval->add_option("--grid", grid_text, "start:stop:count[:linear|log]")->required();

    auto* series = app.add_subcommand("series", "Indicial roots and Frobenius coefficients");
    add_common(series, common, false);
    series->add_option("--order", order, "Equation order (4, 6, 8)")->capture_default_str();
    series->add_option("--Lambda", Lambda, "Eigenvalue parameter Lambda")->capture_default_str();
    series->add_option("--terms", terms, "Series terms N")->capture_default_str();

    auto add_function = [&](CLI::App* cmd) {
        cmd->add_option("--function", function_name, "Fixture test-function name")->capture_default_str();
        cmd->add_option("--fixtures", fixture_file, "Fixture file (default: bundled)");
        cmd->add_option("--expr", expr, "Closed-form expression in x (overrides --function)");
        cmd->add_option("--support", support, "Support end of --expr when compactly supported");
    };
    auto* transform = app.add_subcommand("transform", "Forward transform (lambda, g) with Parseval diagnostics");
    add_common(transform, common);
    add_function(transform);
    transform->add_option("--grid", grid_text, "lambda grid start:stop:count[:linear|log]")->required();
    transform->add_flag("--classical", classical, "Classical order-0 Hankel transform instead");

    auto* inverse = app.add_subcommand("inverse", "Inverse of the forward transform, (x, f)");
    add_common(inverse, common);
    add_function(inverse);
    inverse->add_option("--grid", grid_text, "x grid start:stop:count[:linear|log]")->required();

    auto* spectrum = app.add_subcommand("spectrum", "Boundary condition (alpha, beta) with eigenvalue mu < 0");
    add_common(spectrum, common, false);
    spectrum->add_option("--grid", grid_text, "mu grid, e.g. -15:-0.001:20:log")->required();

    auto* verify = app.add_subcommand("verify", "Run the invariant suite");
    add_common(verify, common);
    verify->add_option("--only", only, "Run invariants whose id starts with these prefixes");

    auto* pde = app.add_subcommand("pde-residual", "Plate-equation residual of a separated solution on a polar grid");
    add_common(pde, common);
    pde->add_option("--kind", kind_text, "Radial solution J, Y, I or K")->capture_default_str();
    pde->add_option("--lambda", lambda, "lambda")->capture_default_str();
    pde->add_option("--A", A, "cos 2 theta amplitude")->capture_default_str();
    pde->add_option("--B", B, "sin 2 theta amplitude")->capture_default_str();
    pde->add_option("--grid", grid_text, "r grid start:stop:count[:linear|log]")->default_val("0.2:5:10");
    pde->add_option("--theta-count", theta_count, "Equally spaced theta samples")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return error_record(exit_usage, "usage", e.what());
    }

    try {
        Table t;
        std::string command;
        if (*eval) {
            command = "eval";
            t = run_eval(common, lambda, GridSpec::parse(grid_text));
        } else if (*series) {
            command = "series";
            t = run_series(common, order, Lambda, terms);
        } else if (*transform) {
            command = "transform";
            t = run_transform(common, pick_function(function_name, expr, fixture_file, support), GridSpec::parse(grid_text), classical);
        } else if (*inverse) {
            command = "inverse";
            t = run_inverse(common, pick_function(function_name, expr, fixture_file, support), GridSpec::parse(grid_text));
        } else if (*spectrum) {
            command = "spectrum";
            t = run_spectrum(common, GridSpec::parse(grid_text));
        } else if (*verify) {
            command = "verify";
            t = run_verify(common, only);
        } else {
            command = "pde-residual";
            t = run_pde(common, parse_kind(kind_text), lambda, A, B, GridSpec::parse(grid_text), theta_count);
        }
        emit(t, common, command);
        if (t.nonconvergence)
            return error_record(exit_nonconvergence, "nonconvergence", command + ": a quadrature or truncation did not converge");
        if (!t.passed)
            return error_record(exit_check_failure, "check-failure", command + ": a check exceeded its tolerance");
        return exit_pass;
    } catch (const UsageError& e) {
        return error_record(exit_usage, "usage", e.what());
    } catch (const ConvergenceError& e) {
        return error_record(exit_nonconvergence, "nonconvergence", e.what());
    } catch (const DomainError& e) {
        return error_record(exit_usage, "domain", e.what());
    } catch (const std::exception& e) {
        return error_record(exit_check_failure, "failure", e.what());
    }
}
