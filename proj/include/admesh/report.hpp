#pragma once

#include "admesh/problem.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace admesh {

/// One accepted step of a mesh run.
struct StepRecord {
    std::size_t i = 0;
    double x_hat = 0.0;
    double y_hat = 0.0;
    double c_hat = 0.0;
    double h = 0.0;
    int l_bisect = 0;
    std::size_t g_evals_new = 0;
    bool clamped = false;
    bool no_sign_change = false;
};

struct MeshPoint {
    double x = 0.0;
    double y = 0.0;
};

/// Output of a solve. The error fields are filled by assess_errors().
struct SolveReport {
    std::vector<StepRecord> steps;
    std::vector<MeshPoint> mesh;
    std::size_t m_hat = 0;
    double theorem_bound = 0.0;
    std::size_t total_g_evals = 0;

    std::vector<double> local_errors;
    std::vector<double> global_errors;
    double max_local_error = 0.0;
    double max_global_error = 0.0;
};

/// True local errors |y_{i+1} - z_i(x_{i+1})| and global errors
/// |y_i - z(x_i)| against the problem's local and reference solutions.
void assess_errors(const Problem& problem, SolveReport& report);

}  // namespace admesh
