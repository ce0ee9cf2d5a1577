#pragma once

#include "admesh/poly_interp.hpp"
#include "admesh/problem.hpp"
#include "admesh/report.hpp"

#include <cstddef>
#include <string>

namespace admesh {

enum class BaselineScheme {
    /// Newton-Cotes type step on the y-dependent node set of [y_i, y_{i+1}].
    Implicit,
    /// Interpolant frozen on r equidistant nodes of [y_i, y_i + 2 f(y_i) h]
    /// (a single node y_i for r = 1): r evaluations per step, no divided
    /// difference. This is the fixed-mesh counterpart of the adaptive run.
    Frozen,
};

const char* to_string(BaselineScheme scheme) noexcept;
BaselineScheme parse_baseline_scheme(const std::string& name);

struct BaselineConfig {
    std::size_t m = 10;
    int r = 2;
    double root_tol = 0.0;  // <= 0 selects 1e-14 * max(1, |eta|)
    BaselineScheme scheme = BaselineScheme::Implicit;

    void validate() const;
};

/// Implicit Newton-Cotes type step: solves
///   integral_{y_i}^{y} ghat_i(z; y) dz = h
/// where ghat_i interpolates g on a node set that depends on y.
/// Fresh evaluations land in `cache` (one entry per distinct abscissa).
double implicit_step(const GEvaluator& g, double y_i, double h, int r,
                     double root_tol, EvalCache& cache);
double implicit_step(const Problem& problem, double x_i, double y_i, double h, double root_tol = 0.0);

/// Frozen-interpolant step; same cache contract as implicit_step.
double frozen_step(const GEvaluator& g, double y_i, double h, int r, double root_tol, EvalCache& cache);

/// Nodes of ghat_i for the interval [y_lo, y].
std::vector<double> quadrature_nodes(double y_lo, double y, int r);

/// Fixed equidistant mesh x_i = a + i (b - a) / m.
SolveReport equidistant_solve(const Problem& problem, const BaselineConfig& config);

}  // namespace admesh
