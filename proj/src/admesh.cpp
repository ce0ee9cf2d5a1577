#include "admesh/admesh.hpp"

#include "admesh/error.hpp"
#include "admesh/nc_constants.hpp"

#include <cmath>
#include <string>

namespace admesh {

namespace {

constexpr double kCHatFloor = 1e-300;

}  // namespace

void AdmeshConfig::validate() const {
    if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::BadParam, "eps must lie in (0, 1)");
    if (!(alpha > 0.0 && alpha < 0.5)) throw Error(ErrorCode::BadParam, "alpha must lie in (0, 1/2)");
    if (r < 1 || r > kMaxOrder) throw Error(ErrorCode::UnsupportedOrder, "r=" + std::to_string(r));
    if (max_steps == 0) throw Error(ErrorCode::BadParam, "max_steps must be positive");
}

CHat c_hat(const GEvaluator& g, double y_hat, double eps, int r) {
    const double span = std::pow(eps, 1.0 / (r + 1));
    const auto nodes = equidistant_nodes(y_hat, y_hat + span, r + 1);
    CHat out;
    std::vector<double> values;
    values.reserve(nodes.size());
    for (double z : nodes) {
        values.push_back(g(z));
        out.evals.emplace_back(z, values.back());
    }
    const double dd = divided_difference(values, nodes);
    out.value = std::ldexp(std::abs(dd), r + 1) / std::pow(values.front(), r + 2);
    return out;
}

CHat c_hat(const Problem& problem, double y_hat, double eps, int r) {
    GEvaluator g(problem);
    return c_hat(g, y_hat, eps, r);
}

NextPoint next_mesh_point(double x_hat, double c_hat, double eps, double alpha, double abs_c_r, double b, int r) {
    if (!(c_hat > kCHatFloor)) return {b, true};
    const double h = 2.0 * std::pow(eps / (abs_c_r * c_hat * (1.0 - alpha)), 1.0 / (r + 1));
    const double x_next = x_hat + h;
    if (x_next >= b) return {b, true};
    return {x_next, false};
}

int bisection_depth(double f_at_y, double h, double eps) {
    int l = 1;
    double width = f_at_y * h;
    while (width > 0.5 * eps && l < 4096) {
        width *= 0.5;
        ++l;
    }
    return l;
}

BisecResult bisec(const InterpPolynomial& p, double y_lo, double y_hi, double target, int l) {
    auto residual = [&](double y) { return p.integral(y_lo, y) - target; };
    if (residual(y_hi) < 0.0) return {y_hi, true};
    double lo = y_lo;
    double hi = y_hi;
    for (int step = 0; step < l; ++step) {
        const double mid = 0.5 * (lo + hi);
        if (residual(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return {0.5 * (lo + hi), false};
}

double theorem_bound(double eps, double alpha, int r, double abs_c_r) {
    return ((1.0 + alpha) / (1.0 - alpha) * std::ldexp(1.0, r + 1) / abs_c_r + 0.5) * eps;
}

SolveReport admesh_solve(const Problem& problem, const AdmeshConfig& config) {
    problem.validate();
    config.validate();
    if (config.r != problem.r) {
        throw Error(ErrorCode::BadParam, "config.r=" + std::to_string(config.r) +
                                             " differs from problem.r=" + std::to_string(problem.r));
    }
    const int r = config.r;
    const double abs_c_r = newton_cotes_constant(r).magnitude();
    const double eps = config.eps;

    GEvaluator g(problem);
    ScalarFn g_fn = [&g](double y) { return g(y); };

    SolveReport report;
    report.theorem_bound = theorem_bound(eps, config.alpha, r, abs_c_r);
    double x = problem.a;
    double y = problem.eta;
    report.mesh.push_back({x, y});

    while (x < problem.b) {
        if (report.steps.size() >= config.max_steps) {
            throw Error(ErrorCode::StepLimitExceeded,
                        "no arrival at b after " + std::to_string(config.max_steps) + " steps");
        }
        const std::size_t evals_before = g.count();

        const CHat coeff = c_hat(g, y, eps, r);
        const double g_y = coeff.evals.front().second;
        const double f_y = 1.0 / g_y;
        const NextPoint next = next_mesh_point(x, coeff.value, eps, config.alpha, abs_c_r, problem.b, r);
        const double h = next.x_next - x;
        const double y_bar = y + 2.0 * f_y * h;

        // Only g(y_hat) carries over from the divided-difference nodes.
        EvalCache cache;
        cache.insert(y, g_y);
        InterpPolynomial interp;
        if (r == 1 || !(y_bar > y)) {
            const double value[] = {g_y};
            interp = InterpPolynomial::from_samples({y}, value);
        } else {
            interp = build_interpolant(g_fn, y, y_bar, r, &cache).poly;
        }

        const int depth = bisection_depth(f_y, h, eps);
        const BisecResult solved = y_bar > y ? bisec(interp, y, y_bar, h, depth) : BisecResult{y, false};

        StepRecord rec;
        rec.i = report.steps.size();
        rec.x_hat = x;
        rec.y_hat = y;
        rec.c_hat = coeff.value;
        rec.h = h;
        rec.l_bisect = depth;
        rec.g_evals_new = g.count() - evals_before;
        rec.clamped = next.clamped;
        rec.no_sign_change = solved.no_sign_change;
        report.steps.push_back(rec);

        x = next.x_next;
        y = solved.y;
        report.mesh.push_back({x, y});
    }
    report.m_hat = report.steps.size();
    report.total_g_evals = g.count();
    return report;
}

}  // namespace admesh
