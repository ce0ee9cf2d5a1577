#pragma once

#include "admesh/problem.hpp"

#include <cstddef>
#include <vector>

namespace admesh {

/// Equidistributing mesh: c_bar_i (x_{i+1} - x_i)^{r+1} = k_star on every
/// subinterval.
struct OptimalMesh {
    std::size_t m = 0;
    std::vector<double> x_star;
    double k_star = 0.0;
    std::vector<double> c_bar;
    double s_factor = 0.0;  // k_star = ((b - a) / m)^{r+1} * s_factor
    double c_lo = 0.0;      // min of b_g over [eta, z(b)]
    double c_hi = 0.0;      // max of b_g over [eta, z(b)]
    double residual = 0.0;  // max_i |c_bar_i h_i^{r+1} - k_star| / k_star
};

/// b_g(y) = |g^{(r)}(y)| / g(y)^{r+2} * |C_r| / r!
double local_error_density(const Problem& problem, double y);

/// Sup of b_g over [z(x_lo), z(x_hi)], z the reference solution, scanned on
/// 512- and 1024-subinterval grids.
double c_bar(const Problem& problem, double x_lo, double x_hi);

/// Same sup, over a state interval directly.
double c_bar_states(const Problem& problem, double y_lo, double y_hi);

OptimalMesh equidistribute(const Problem& problem, std::size_t m);

/// Minimal m with k_m* <= eps. k_m* carries solver error near 1e-12
/// relative, so the comparison admits a relative slack of 1e-9.
std::size_t m_of_eps(const Problem& problem, double eps);

struct GainReport {
    double k_star = 0.0;
    double equidistant_level = 0.0;  // max_i c_bar_i ((b - a) / m)^{r+1}, equidistant mesh
    double gain_ratio = 0.0;
};

GainReport gain_report(const Problem& problem, std::size_t m);
GainReport gain_report(const Problem& problem, const OptimalMesh& mesh);

}  // namespace admesh
