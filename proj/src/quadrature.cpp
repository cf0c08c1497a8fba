#include "bessel4/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "bessel4/errors.hpp"

namespace bessel4 {

namespace {

constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel qk15(const RealFn& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double resg = fc * wg[3];
    double resk = fc * wgk[7];
    double resabs = std::fabs(resk);
    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * xgk[j];
        const double f1 = f(center - dx), f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += wgk[j] * (f1 + f2);
        resabs += wgk[j] * (std::fabs(f1) + std::fabs(f2));
        if (j % 2 == 1)
            resg += wg[j / 2] * (f1 + f2);
    }
    const double reskh = resk * 0.5;
    double resasc = wgk[7] * std::fabs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += wgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));
    const double result = resk * half;
    resabs *= std::fabs(half);
    resasc *= std::fabs(half);
    double err = std::fabs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double uflow = std::numeric_limits<double>::min();
    if (resabs > uflow / (50.0 * eps))
        err = std::max(50.0 * eps * resabs, err);
    if (!std::isfinite(result))
        throw DomainError("adaptive_quad: integrand is not finite");
    return {a, b, result, err};
}

QuadResult adaptive_plain(const RealFn& f, double a, double b, double tol, int max_subdivisions, double rel_tol)
{
    QuadResult out;
    if (a == b)
        return out;
    std::priority_queue<Panel> heap;
    Panel first = qk15(f, a, b);
    out.evaluations = 15;
    heap.push(first);
    double total = first.value, err = first.error;
    int subdivisions = 0;
    while (err > std::max(tol, rel_tol * std::fabs(total))) {
        if (subdivisions >= max_subdivisions) {
            out.converged = false;
            break;
        }
        Panel worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= std::min(worst.a, worst.b) || mid >= std::max(worst.a, worst.b)) {
            out.converged = false;
            break;
        }
        heap.pop();
        const Panel left = qk15(f, worst.a, mid);
        const Panel right = qk15(f, mid, worst.b);
        out.evaluations += 30;
        ++subdivisions;
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        if (subdivisions % 64 == 0) {
            // resum to limit drift in the running totals
            total = 0.0;
            err = 0.0;
            auto copy = heap;
            while (!copy.empty()) {
                total += copy.top().value;
                err += copy.top().error;
                copy.pop();
            }
        }
    }
    double value = 0.0, error = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    out.value = value;
    out.error = error;
    return out;
}

} // namespace

KronrodPanel gauss_kronrod_panel(const RealFn& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double resg = fc * wg[3];
    double resk = fc * wgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * xgk[j];
        const double s = f(center - dx) + f(center + dx);
        resk += wgk[j] * s;
        if (j % 2 == 1)
            resg += wg[j / 2] * s;
    }
    return {resk * half, resg * half};
}

void kronrod_nodes(double a, double b, double* nodes, double* weights, double* gauss_weights)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int j = 0; j < 7; ++j) {
        nodes[2 * j] = center - half * xgk[j];
        nodes[2 * j + 1] = center + half * xgk[j];
        weights[2 * j] = weights[2 * j + 1] = wgk[j] * half;
        if (gauss_weights)
            gauss_weights[2 * j] = gauss_weights[2 * j + 1] = j % 2 == 1 ? wg[j / 2] * half : 0.0;
    }
    nodes[14] = center;
    weights[14] = wgk[7] * half;
    if (gauss_weights)
        gauss_weights[14] = wg[3] * half;
}

QuadResult adaptive_quad(const RealFn& f, double a, double b, double tol, EndpointSingularity singular,
                         int max_subdivisions, double rel_tol)
{
    if (!(tol > 0.0))
        throw DomainError("adaptive_quad: tolerance must be positive");
    if (!std::isfinite(a) || !std::isfinite(b))
        throw DomainError("adaptive_quad: finite limits required");
    const double w = b - a;
    switch (singular) {
    case EndpointSingularity::none:
        return adaptive_plain(f, a, b, tol, max_subdivisions, rel_tol);
    case EndpointSingularity::left: {
        const RealFn g = [&](double u) { return u == 0.0 ? 0.0 : 2.0 * w * u * f(a + w * u * u); };
        return adaptive_plain(g, 0.0, 1.0, tol, max_subdivisions, rel_tol);
    }
    case EndpointSingularity::right: {
        const RealFn g = [&](double u) { return u == 0.0 ? 0.0 : 2.0 * w * u * f(b - w * u * u); };
        return adaptive_plain(g, 0.0, 1.0, tol, max_subdivisions, rel_tol);
    }
    case EndpointSingularity::both: {
        const double mid = 0.5 * (a + b);
        QuadResult l = adaptive_quad(f, a, mid, 0.5 * tol, EndpointSingularity::left, max_subdivisions / 2, rel_tol);
        QuadResult r = adaptive_quad(f, mid, b, 0.5 * tol, EndpointSingularity::right, max_subdivisions / 2, rel_tol);
        return {l.value + r.value, l.error + r.error, l.converged && r.converged, l.evaluations + r.evaluations};
    }
    }
    throw InternalError("adaptive_quad: unknown endpoint flag");
}

double wynn_epsilon(const double* s, int n)
{
    if (n <= 0)
        return 0.0;
    if (n < 3)
        return s[n - 1];
    // e[k] holds column entries; classic rhombus rule
    std::vector<double> prev(n + 1, 0.0), cur(s, s + n);
    double best = s[n - 1];
    for (int col = 1; col < n; ++col) {
        std::vector<double> next(n - col);
        bool ok = true;
        for (int i = 0; i < n - col; ++i) {
            const double diff = cur[i + 1] - cur[i];
            if (diff == 0.0 || !std::isfinite(diff)) {
                ok = false;
                break;
            }
            next[i] = (col == 1 ? 0.0 : prev[i + 1]) + 1.0 / diff;
        }
        if (!ok)
            break;
        prev = cur;
        cur = next;
        if (col % 2 == 0)
            best = cur.back();
    }
    return best;
}

QuadResult oscillatory_tail(const RealFn& f, double start, double spacing, double tol, int max_brackets)
{
    if (!(spacing > 0.0))
        throw DomainError("oscillatory_tail: spacing must be positive");
    constexpr int window = 30;
    QuadResult out;
    std::vector<double> sums;
    std::vector<double> contrib;
    std::vector<double> estimates;
    double running = 0.0;
    const double panel_tol = std::max(tol * 1e-2, 1e-15);
    for (int n = 0; n < max_brackets; ++n) {
        const double a = start + n * spacing;
        const QuadResult q = adaptive_quad(f, a, a + spacing, panel_tol);
        out.evaluations += q.evaluations;
        out.error += q.error;
        running += q.value;
        sums.push_back(running);
        contrib.push_back(std::fabs(q.value));
        const int m = static_cast<int>(sums.size());
        const int w = std::min(m, window);
        estimates.push_back(wynn_epsilon(sums.data() + (m - w), w));
        const int e = static_cast<int>(estimates.size());
        if (m >= 3 && contrib[m - 1] < 0.1 * tol && contrib[m - 2] < 0.1 * tol && contrib[m - 3] < 0.1 * tol) {
            out.value = running;
            return out;
        }
        if (e >= 6) {
            const double d1 = std::fabs(estimates[e - 1] - estimates[e - 2]);
            const double d2 = std::fabs(estimates[e - 2] - estimates[e - 3]);
            if (d1 <= tol && d2 <= tol) {
                out.value = estimates[e - 1];
                out.error += d1 + d2;
                return out;
            }
        }
    }
    out.value = estimates.empty() ? 0.0 : estimates.back();
    out.converged = false;
    return out;
}

QuadResult oscillatory_semi_infinite(const RealFn& f, double spacing, double tol, double start)
{
    QuadResult head;
    if (start > 0.0)
        head = adaptive_quad(f, 0.0, start, 0.1 * tol);
    QuadResult tail = oscillatory_tail(f, start, spacing, tol);
    return {head.value + tail.value, head.error + tail.error, head.converged && tail.converged,
            head.evaluations + tail.evaluations};
}

QuadResult semi_infinite_quad(const RealFn& f, double a, double tol, double split)
{
    const double X = std::max(a, 0.0) + split;
    QuadResult head = adaptive_quad(f, a, X, 0.5 * tol);
    const RealFn g = [&](double u) {
        if (u == 0.0)
            return 0.0;
        return f(1.0 / u) / (u * u);
    };
    QuadResult tail = adaptive_quad(g, 0.0, 1.0 / X, 0.5 * tol);
    return {head.value + tail.value, head.error + tail.error, head.converged && tail.converged,
            head.evaluations + tail.evaluations};
}

} // namespace bessel4
