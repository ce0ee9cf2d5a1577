#pragma once

#include "admesh/poly_interp.hpp"

#include <functional>
#include <map>
#include <string>

namespace admesh {

using LocalSolutionFn = std::function<double(double x, double y, double t)>;

/// Scalar autonomous IVP z' = 1/g(z), z(a) = eta on [a, b].
///
/// Membership in the class (g and g^{(r)} of constant sign) is the caller's
/// obligation; only g > 0 is checked, at every point actually visited.
struct Problem {
    std::string name;
    double a = 0.0;
    double b = 1.0;
    double eta = 0.0;
    int r = 2;
    ScalarFn g;
    ScalarFn g_deriv_r;              // optional: g^{(r)}
    LocalSolutionFn local_solution;  // optional: exact z with z(x) = y

    double f(double y) const { return 1.0 / g(y); }
    void validate() const;
};

/// Counts evaluations of g and rejects non-positive values.
class GEvaluator {
public:
    explicit GEvaluator(const Problem& problem) : g_(&problem.g) {}

    double operator()(double y) const;
    std::size_t count() const noexcept { return count_; }

private:
    const ScalarFn* g_;
    mutable std::size_t count_ = 0;
};

struct LocalErrorProbe {
    double x_i = 0.0;
    double x_next = 0.0;
    double y_i = 0.0;
    double y_next = 0.0;
    double true_z = 0.0;
    double abs_error = 0.0;
};

/// Quadrature/root-finding route to the local solution: solves
/// integral_y^w g(s) ds = t - x for w. Independent of Problem::local_solution.
double local_solution_by_quadrature(const Problem& problem, double x, double y, double t);

/// z_loc(t) for z_loc(x) = y; uses the analytic solution when present.
double local_solution(const Problem& problem, double x, double y, double t);

/// Exact trajectory from (a, eta).
double reference_solution(const Problem& problem, double t);

LocalErrorProbe probe_local_error(const Problem& problem, double x_i, double y_i, double x_next, double y_next);

using ProblemParams = std::map<std::string, double>;

/// Built-in problems: "paper-sec7" (delta), "linear-g" (eta), "const-f" (c),
/// "exp-g" (beta). Every entry also accepts a, b, eta and r overrides.
Problem make_problem(const std::string& name, const ProblemParams& params = {});

/// Parses "name:key=val,key=val" and forwards to make_problem.
Problem parse_problem(const std::string& spec);

}  // namespace admesh
