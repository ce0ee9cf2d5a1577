#pragma once

#include "admesh/poly_interp.hpp"
#include "admesh/problem.hpp"
#include "admesh/report.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace admesh {

struct AdmeshConfig {
    double eps = 1e-2;     // target local-error level, in (0, 1)
    double alpha = 0.25;   // safety parameter, in (0, 1/2)
    int r = 2;
    std::size_t max_steps = 10'000'000;

    void validate() const;
};

struct CHat {
    double value = 0.0;
    std::vector<std::pair<double, double>> evals;  // (node, g(node)); evals[0] is y_hat
};

/// Local coefficient 2^{r+1} |g[z_0..z_r]| / g(y_hat)^{r+2} with z_j the r+1
/// equidistant points of [y_hat, y_hat + eps^{1/(r+1)}].
CHat c_hat(const GEvaluator& g, double y_hat, double eps, int r);
CHat c_hat(const Problem& problem, double y_hat, double eps, int r);

struct NextPoint {
    double x_next = 0.0;
    bool clamped = false;
};

/// x_hat + 2 (eps / (|C_r| c_hat (1 - alpha)))^{1/(r+1)}, clamped to b.
/// A vanishing c_hat jumps straight to b.
NextPoint next_mesh_point(double x_hat, double c_hat, double eps, double alpha, double abs_c_r, double b, int r);

/// Minimal l >= 1 with f * h / 2^{l-1} <= eps / 2.
int bisection_depth(double f_at_y, double h, double eps);

struct BisecResult {
    double y = 0.0;
    bool no_sign_change = false;
};

/// Exactly l bisection steps on G(y) = int_{y_lo}^{y} p - target over
/// [y_lo, y_hi]; returns the midpoint of the final interval. When
/// G(y_hi) < 0 the right endpoint is returned and the result flagged.
BisecResult bisec(const InterpPolynomial& p, double y_lo, double y_hi, double target, int l);

/// ((1 + alpha) / (1 - alpha) * 2^{r+1} / |C_r| + 1/2) * eps.
double theorem_bound(double eps, double alpha, int r, double abs_c_r);

/// Adaptive mesh run from (a, eta) to b. Error fields of the report are left
/// for assess_errors().
SolveReport admesh_solve(const Problem& problem, const AdmeshConfig& config);

}  // namespace admesh
