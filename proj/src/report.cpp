#include "admesh/report.hpp"

#include <algorithm>
#include <cmath>

namespace admesh {

void assess_errors(const Problem& problem, SolveReport& report) {
    const auto& mesh = report.mesh;
    report.local_errors.clear();
    report.global_errors.clear();
    report.max_local_error = 0.0;
    report.max_global_error = 0.0;
    for (std::size_t i = 0; i + 1 < mesh.size(); ++i) {
        const auto probe = probe_local_error(problem, mesh[i].x, mesh[i].y, mesh[i + 1].x, mesh[i + 1].y);
        report.local_errors.push_back(probe.abs_error);
        report.max_local_error = std::max(report.max_local_error, probe.abs_error);
    }
    for (const auto& point : mesh) {
        const double err = std::abs(point.y - reference_solution(problem, point.x));
        report.global_errors.push_back(err);
        report.max_global_error = std::max(report.max_global_error, err);
    }
}

}  // namespace admesh
