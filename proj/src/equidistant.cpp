#include "admesh/equidistant.hpp"

#include "admesh/error.hpp"

#include <cmath>
#include <string>

namespace admesh {

const char* to_string(BaselineScheme scheme) noexcept {
    return scheme == BaselineScheme::Implicit ? "implicit" : "frozen";
}

BaselineScheme parse_baseline_scheme(const std::string& name) {
    if (name == "implicit") return BaselineScheme::Implicit;
    if (name == "frozen") return BaselineScheme::Frozen;
    throw Error(ErrorCode::BadParam, "unknown baseline scheme '" + name + "'");
}

void BaselineConfig::validate() const {
    if (m < 1) throw Error(ErrorCode::BadParam, "m must be >= 1");
    if (r < 1) throw Error(ErrorCode::BadParam, "r must be >= 1");
}

std::vector<double> quadrature_nodes(double y_lo, double y, int r) {
    const double width = y - y_lo;
    if (r == 1) return {y_lo};
    if (r == 2) return {0.5 * (y_lo + y)};
    if (r % 2 == 0) return equidistant_nodes(y_lo, y, r - 1);
    std::vector<double> nodes(static_cast<std::size_t>(r));
    for (int j = 0; j < r; ++j) nodes[static_cast<std::size_t>(j)] = y_lo + width * j / r;
    return nodes;
}

double implicit_step(const GEvaluator& g, double y_i, double h, int r,
                     double root_tol, EvalCache& cache) {
    if (h == 0.0) return y_i;
    auto g_cached = [&](double y) {
        if (const double* hit = cache.find(y)) return *hit;
        const double gy = g(y);
        cache.insert(y, gy);
        return gy;
    };
    auto residual = [&](double y) {
        if (y == y_i) return -h;
        const auto nodes = quadrature_nodes(y_i, y, r);
        std::vector<double> values;
        values.reserve(nodes.size());
        for (double z : nodes) values.push_back(g_cached(z));
        return InterpPolynomial::from_samples(nodes, values).integral(y_i, y) - h;
    };

    const double f_i = 1.0 / g_cached(y_i);
    double lo = y_i;
    double width = 2.0 * f_i * h;
    double hi = y_i + width;
    int doublings = 0;
    while (residual(hi) < 0.0) {
        lo = hi;
        width *= 2.0;
        hi = y_i + width;
        if (++doublings > 50 || !std::isfinite(hi)) {
            throw Error(ErrorCode::NoBracket, "implicit step bracket not found after 50 doublings");
        }
    }
    while (hi - lo > root_tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (residual(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double frozen_step(const GEvaluator& g, double y_i, double h, int r, double root_tol, EvalCache& cache) {
    if (h == 0.0) return y_i;
    auto g_cached = [&](double y) {
        if (const double* hit = cache.find(y)) return *hit;
        const double gy = g(y);
        cache.insert(y, gy);
        return gy;
    };
    const double g_i = g_cached(y_i);
    const double y_bar = y_i + 2.0 * h / g_i;
    InterpPolynomial interp;
    if (r == 1 || !(y_bar > y_i)) {
        const double value[] = {g_i};
        interp = InterpPolynomial::from_samples({y_i}, value);
    } else {
        const ScalarFn fn = [&g](double y) { return g(y); };
        interp = build_interpolant(fn, y_i, y_bar, r, &cache).poly;
    }
    auto residual = [&](double y) { return interp.integral(y_i, y) - h; };

    double lo = y_i;
    double width = y_bar - y_i;
    double hi = y_bar;
    int doublings = 0;
    while (residual(hi) < 0.0) {
        lo = hi;
        width *= 2.0;
        hi = y_i + width;
        if (++doublings > 50 || !std::isfinite(hi)) {
            throw Error(ErrorCode::NoBracket, "frozen step bracket not found after 50 doublings");
        }
    }
    while (hi - lo > root_tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (residual(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double implicit_step(const Problem& problem, [[maybe_unused]] double x_i, double y_i, double h, double root_tol) {
    GEvaluator g(problem);
    EvalCache cache;
    const double tol = root_tol > 0.0 ? root_tol : 1e-14 * std::max(1.0, std::abs(problem.eta));
    return implicit_step(g, y_i, h, problem.r, tol, cache);
}

SolveReport equidistant_solve(const Problem& problem, const BaselineConfig& config) {
    problem.validate();
    config.validate();
    const double root_tol = config.root_tol > 0.0 ? config.root_tol : 1e-14 * std::max(1.0, std::abs(problem.eta));
    GEvaluator g(problem);

    SolveReport report;
    const auto m = config.m;
    auto mesh_x = [&](std::size_t i) {
        return i == m ? problem.b : problem.a + (problem.b - problem.a) * static_cast<double>(i) / static_cast<double>(m);
    };
    double y = problem.eta;
    report.mesh.push_back({problem.a, y});
    for (std::size_t i = 0; i < m; ++i) {
        const double x = mesh_x(i);
        const double h = mesh_x(i + 1) - x;
        EvalCache cache;
        const std::size_t before = g.count();
        const double y_next = config.scheme == BaselineScheme::Implicit
                                  ? implicit_step(g, y, h, config.r, root_tol, cache)
                                  : frozen_step(g, y, h, config.r, root_tol, cache);

        StepRecord rec;
        rec.i = i;
        rec.x_hat = x;
        rec.y_hat = y;
        rec.h = h;
        rec.g_evals_new = g.count() - before;
        report.steps.push_back(rec);

        y = y_next;
        report.mesh.push_back({mesh_x(i + 1), y});
    }
    report.m_hat = m;
    report.total_g_evals = g.count();
    return report;
}

}  // namespace admesh
