// Acceptance criteria AC1-AC12: one pass/fail line per criterion with its
// runtime. Each criterion runs the named invariants at M = 1 and, where a
// budget is given, also requires the wall time to stay within it.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "bessel4/verification.hpp"

using namespace bessel4;

namespace {

struct Criterion {
    std::string name;
    std::string summary;
    std::vector<std::string> invariants;
    double budget_seconds; // 0: no budget
};

double seconds_since(std::chrono::steady_clock::time_point t)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

int cli_verify_status()
{
    const std::string command = std::string(BESSEL4_CLI_PATH) + " verify --M 1 --tol 1e-5 --output /dev/null";
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {"AC1", "solutions solve the equation (relative residual <= 1e-6)", {"bessel_type.ode_residual"}, 5.0},
        {"AC2", "regular solutions equal 1 at the origin", {"bessel_type.normalization"}, 0.0},
        {"AC3", "monotone classical limit, <= 5e-3 at M = 0.001", {"bessel_type.classical_limit"}, 0.0},
        {"AC4", "indicial roots, y4 coefficients and residual",
         {"frobenius.indicial_roots", "frobenius.y4_coefficients", "frobenius.y4_residual"}, 0.0},
        {"AC5", "boundary-form identities, Green and Dirichlet defects",
         {"forms.boundary_constant", "forms.form_with_one", "forms.form_with_x2", "forms.greens_defect", "forms.dirichlet_defect"}, 0.0},
        {"AC6", "positivity of T0 and S_k", {"forms.positivity_T0", "forms.positivity_Sk"}, 10.0},
        {"AC7", "eigenvalue to extension map",
         {"spectral.candidate_residual", "spectral.boundary_condition", "spectral.distinct_extensions", "spectral.alpha_nonzero"}, 30.0},
        {"AC8", "generalized transform: Parseval, moment, roundtrip",
         {"transforms.parseval", "transforms.moment", "transforms.roundtrip", "transforms.roundtrip_zero"}, 180.0},
        {"AC9", "vanishing moment and total mass of n", {"transforms.vanishing_moment", "measures.n_mass"}, 0.0},
        {"AC10", "delta families and the M -> 0 kernel limit",
         {"transforms.delta_classical", "transforms.delta_generalized", "transforms.kernel_limit"}, 0.0},
        {"AC11", "plate-equation separation and angular criticality", {"plum.separation", "plum.criticality"}, 0.0},
        {"AC12", "classical kernel suite and CLI verify exit 0 within 5 min",
         {"classical_bessel.wronskian", "classical_bessel.ode_residual", "classical_bessel.k_decay"}, 300.0},
    };

    VerifyOptions options;
    options.M = 1.0;
    options.tol = 1e-5;
    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        bool passed = true;
        std::string details;
        for (const std::string& id : c.invariants) {
            const CheckResult r = run_invariant(id, options);
            passed = passed && r.passed;
            char buf[256];
            std::snprintf(buf, sizeof buf, " %s=%.3g(<=%.3g)%s", id.c_str(), r.measured, r.threshold, r.passed ? "" : "!");
            details += buf;
            if (!r.passed && !r.detail.empty())
                details += " [" + r.detail + "]";
        }
        if (c.name == "AC12") {
            const auto cli_start = std::chrono::steady_clock::now();
            const int status = cli_verify_status();
            char buf[128];
            std::snprintf(buf, sizeof buf, " cli_verify_exit=%d in %.1fs", status, seconds_since(cli_start));
            details += buf;
            passed = passed && status == 0;
        }
        const double elapsed = seconds_since(start);
        if (c.budget_seconds > 0.0 && elapsed > c.budget_seconds) {
            passed = false;
            details += " [over budget]";
        }
        failures += !passed;
        std::printf("%-4s %s %8.3fs  %s;%s\n", c.name.c_str(), passed ? "PASS" : "FAIL", elapsed, c.summary.c_str(), details.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu acceptance criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
