// Command-line front end: solve, table, optimal-mesh, constants.

#include "admesh/admesh.hpp"
#include "admesh/bench.hpp"
#include "admesh/error.hpp"
#include "admesh/nc_constants.hpp"
#include "admesh/optimal_mesh.hpp"
#include "admesh/problem.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size()) throw CLI::ValidationError("list", "bad number '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw CLI::ValidationError("list", "empty list");
    return out;
}

int write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return 0;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        std::cerr << "cannot open " << path << " for writing\n";
        return 1;
    }
    file << text;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive mesh selection for scalar autonomous IVPs z' = 1/g(z)"};
    app.require_subcommand(1);

    std::string problem_spec = "paper-sec7:delta=0.1";
    std::string out_path;
    double eps = 1e-2;
    double alpha = 0.25;
    int r = 2;

    auto* solve = app.add_subcommand("solve", "one adaptive run with true error assessment (JSON)");
    solve->add_option("--problem", problem_spec, "name:key=val,... (paper-sec7, linear-g, const-f, exp-g)");
    solve->add_option("--eps", eps, "target local-error level in (0,1)");
    solve->add_option("--alpha", alpha, "safety parameter in (0,1/2)");
    solve->add_option("--r", r, "order");
    solve->add_option("--out", out_path, "output file (default stdout)");

    std::string family = "paper-sec7";
    std::string eps_list = "1e-2,1e-4,1e-8";
    std::string delta_list = "1e-1,1e-4,1e-8";
    std::string format = "pretty";
    unsigned threads = 0;
    std::string baseline = "frozen";
    auto* table = app.add_subcommand("table", "adaptive vs equidistant comparison grid");
    table->add_option("--family", family, "problem family; delta is applied to paper-sec7");
    table->add_option("--eps-list", eps_list, "comma-separated eps values");
    table->add_option("--delta-list", delta_list, "comma-separated delta values");
    table->add_option("--alpha", alpha, "safety parameter in (0,1/2)");
    table->add_option("--r", r, "order");
    table->add_option("--format", format, "csv | json | pretty");
    table->add_option("--baseline", baseline, "equidistant comparator: frozen | implicit");
    table->add_option("--threads", threads, "worker threads (0 = hardware)");
    table->add_option("--out", out_path, "output file (default stdout)");

    std::size_t m = 0;
    double mesh_eps = 0.0;
    auto* optimal = app.add_subcommand("optimal-mesh", "equidistributing mesh, k*, S(m) and gain");
    optimal->add_option("--problem", problem_spec, "name:key=val,...");
    auto* m_opt = optimal->add_option("--m", m, "number of subintervals");
    auto* eps_opt = optimal->add_option("--eps", mesh_eps, "pick m = m(eps)");
    m_opt->excludes(eps_opt);
    optimal->add_option("--r", r, "order (overrides the problem's r)");
    optimal->add_option("--out", out_path, "output file (default stdout)");

    int r_max = admesh::kMaxOrder;
    auto* constants = app.add_subcommand("constants", "Newton-Cotes remainder constants C_r");
    constants->add_option("--r-max", r_max, "largest order to print")->check(CLI::Range(1, admesh::kMaxOrder));
    constants->add_option("--out", out_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*solve) {
            auto problem = admesh::parse_problem(problem_spec + (problem_spec.find(':') == std::string::npos ? ":" : ",") +
                                                 "r=" + std::to_string(r));
            admesh::AdmeshConfig config;
            config.eps = eps;
            config.alpha = alpha;
            config.r = r;
            auto report = admesh::admesh_solve(problem, config);
            admesh::assess_errors(problem, report);
            return write_output(out_path, admesh::bench::emit_solve(problem, config, report));
        }
        if (*table) {
            admesh::bench::TableSpec spec;
            spec.family = family;
            spec.eps_list = parse_list(eps_list);
            spec.delta_list = parse_list(delta_list);
            spec.alpha = alpha;
            spec.r = r;
            spec.threads = threads;
            spec.baseline = admesh::parse_baseline_scheme(baseline);
            const auto fmt = admesh::bench::parse_format(format);
            const auto rows = admesh::bench::run_table(spec);
            if (const int rc = write_output(out_path, admesh::bench::emit(rows, fmt)); rc != 0) return rc;
            for (const auto& row : rows) {
                if (row.failed()) return 2;
            }
            return 0;
        }
        if (*optimal) {
            std::string spec = problem_spec;
            if (optimal->count("--r") > 0) {
                spec += (spec.find(':') == std::string::npos ? ":" : ",") + std::string("r=") + std::to_string(r);
            }
            const auto problem = admesh::parse_problem(spec);
            std::size_t target = 0;
            if (*eps_opt) {
                target = admesh::m_of_eps(problem, mesh_eps);
                m = target;
            }
            if (m == 0) {
                std::cerr << "optimal-mesh needs --m or --eps\n";
                return 1;
            }
            const auto mesh = admesh::equidistribute(problem, m);
            const auto gain = admesh::gain_report(problem, mesh);
            return write_output(out_path, admesh::bench::emit_optimal_mesh(problem, mesh, gain, target, mesh_eps));
        }
        if (*constants) {
            return write_output(out_path, admesh::bench::emit_constants(r_max));
        }
    } catch (const admesh::Error& e) {
        std::cerr << e.what() << '\n';
        const auto code = e.code();
        const bool usage = code == admesh::ErrorCode::UnknownProblem || code == admesh::ErrorCode::BadParam ||
                           code == admesh::ErrorCode::UnknownFormat || code == admesh::ErrorCode::UnsupportedOrder;
        return usage ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
    return 0;
}
