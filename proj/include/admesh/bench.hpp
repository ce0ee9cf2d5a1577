#pragma once

#include "admesh/admesh.hpp"
#include "admesh/equidistant.hpp"
#include "admesh/optimal_mesh.hpp"
#include "admesh/problem.hpp"
#include "admesh/report.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace admesh::bench {

/// One (eps, delta) cell of the comparison table.
struct ExperimentRow {
    double eps = 0.0;
    double delta = 0.0;
    int r = 2;
    double alpha = 0.25;
    std::size_t iadapt = 0;
    double maxerr = 0.0;
    double bound = 0.0;
    double maxerr_over_bound = 0.0;
    double maxerrg = 0.0;
    double equidist_maxerr = 0.0;
    double equidist_maxerrg = 0.0;
    double ratio_local = 0.0;   // equidist_maxerr / maxerr
    double ratio_global = 0.0;  // equidist_maxerrg / maxerrg
    std::size_t evals_adaptive = 0;
    std::size_t evals_equidistant = 0;

    bool quadrature_oracle = false;  // errors measured without an analytic local solution
    std::string error;               // non-empty for a failed cell
    bool failed() const noexcept { return !error.empty(); }
};

struct TableSpec {
    std::string family = "paper-sec7";
    ProblemParams base_params;  // delta is added per cell for paper-sec7
    std::vector<double> eps_list;
    std::vector<double> delta_list;
    double alpha = 0.25;
    int r = 2;
    BaselineScheme baseline = BaselineScheme::Frozen;
    unsigned threads = 0;  // 0 picks hardware concurrency
};

/// ADMESH against an equidistant mesh with twice as many subintervals.
ExperimentRow run_cell(const std::string& family, const ProblemParams& base_params, double eps, double delta,
                       double alpha, int r, BaselineScheme baseline = BaselineScheme::Frozen);

/// Rows ordered eps-major, delta-minor regardless of execution order.
std::vector<ExperimentRow> run_table(const TableSpec& spec);

enum class Format { Csv, Json, Pretty };

Format parse_format(std::string_view name);

inline constexpr std::string_view kCsvHeader =
    "eps,delta,r,alpha,iadapt,maxerr,bound,maxerr_over_bound,maxerrg,equidist_maxerr,"
    "equidist_maxerrg,ratio_local,ratio_global,evals_adaptive,evals_equidistant";

std::string emit(const std::vector<ExperimentRow>& rows, Format format);

/// Inverse of the csv emitter.
std::vector<ExperimentRow> parse_csv(std::string_view text);

std::string emit_solve(const Problem& problem, const AdmeshConfig& config, const SolveReport& report);

std::string emit_optimal_mesh(const Problem& problem, const OptimalMesh& mesh, const GainReport& gain,
                              std::size_t m_eps_target = 0, double eps = 0.0);

std::string emit_constants(int r_max);

/// "%.17g" formatting.
std::string format_double(double v);

}  // namespace admesh::bench
