#include "admesh/bench.hpp"

#include "admesh/equidistant.hpp"
#include "admesh/error.hpp"
#include "admesh/nc_constants.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <future>
#include <limits>
#include <sstream>
#include <thread>

namespace admesh::bench {

namespace {

double safe_ratio(double num, double den) {
    if (den == 0.0) return num == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    return num / den;
}

std::string json_number(double v) {
    return std::isfinite(v) ? format_double(v) : std::string("null");
}

std::string json_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
            out += c;
        } else if (static_cast<unsigned char>(c) < 0x20) {
            out += ' ';
        } else {
            out += c;
        }
    }
    return out;
}

std::string csv_row(const ExperimentRow& row) {
    std::ostringstream os;
    os << format_double(row.eps) << ',' << format_double(row.delta) << ',' << row.r << ','
       << format_double(row.alpha) << ',';
    if (row.failed()) {
        std::string message = row.error;
        std::replace(message.begin(), message.end(), ',', ';');
        std::replace(message.begin(), message.end(), '\n', ' ');
        os << "ERROR:" << message << ",,,,,,,,,,";
        return os.str();
    }
    os << row.iadapt << ',' << format_double(row.maxerr) << ',' << format_double(row.bound) << ','
       << format_double(row.maxerr_over_bound) << ',' << format_double(row.maxerrg) << ','
       << format_double(row.equidist_maxerr) << ',' << format_double(row.equidist_maxerrg) << ','
       << format_double(row.ratio_local) << ',' << format_double(row.ratio_global) << ','
       << row.evals_adaptive << ',' << row.evals_equidistant;
    return os.str();
}

std::string json_row(const ExperimentRow& row) {
    std::ostringstream os;
    os << "{\"eps\":" << json_number(row.eps) << ",\"delta\":" << json_number(row.delta) << ",\"r\":" << row.r
       << ",\"alpha\":" << json_number(row.alpha);
    if (row.failed()) {
        os << ",\"iadapt\":null,\"maxerr\":null,\"bound\":null,\"maxerr_over_bound\":null,\"maxerrg\":null,"
              "\"equidist_maxerr\":null,\"equidist_maxerrg\":null,\"ratio_local\":null,\"ratio_global\":null,"
              "\"evals_adaptive\":null,\"evals_equidistant\":null,\"error\":\""
           << json_escape(row.error) << "\"}";
        return os.str();
    }
    os << ",\"iadapt\":" << row.iadapt << ",\"maxerr\":" << json_number(row.maxerr)
       << ",\"bound\":" << json_number(row.bound) << ",\"maxerr_over_bound\":" << json_number(row.maxerr_over_bound)
       << ",\"maxerrg\":" << json_number(row.maxerrg) << ",\"equidist_maxerr\":" << json_number(row.equidist_maxerr)
       << ",\"equidist_maxerrg\":" << json_number(row.equidist_maxerrg)
       << ",\"ratio_local\":" << json_number(row.ratio_local) << ",\"ratio_global\":" << json_number(row.ratio_global)
       << ",\"evals_adaptive\":" << row.evals_adaptive << ",\"evals_equidistant\":" << row.evals_equidistant;
    if (row.quadrature_oracle) os << ",\"oracle\":\"quadrature\"";
    os << '}';
    return os.str();
}

std::string short_number(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::string pretty_table(const std::vector<ExperimentRow>& rows) {
    std::ostringstream os;
    char line[512];
    std::snprintf(line, sizeof line, "%-9s %-9s %8s %-11s %-11s %-11s %-13s %-13s %10s %10s\n", "eps", "delta",
                  "IADAPT", "MAXERR", "MAXERR/BND", "MAXERRG", "EQUIDIST/ERR", "EQUIDISTG/G", "EVALS_AD", "EVALS_EQ");
    os << line;
    for (const auto& row : rows) {
        if (row.failed()) {
            std::snprintf(line, sizeof line, "%-9s %-9s  ERROR %s\n", short_number(row.eps, 3).c_str(),
                          short_number(row.delta, 3).c_str(), row.error.c_str());
            os << line;
            continue;
        }
        std::snprintf(line, sizeof line, "%-9s %-9s %8zu %-11s %-11s %-11s %-13s %-13s %10zu %10zu%s\n",
                      short_number(row.eps, 3).c_str(), short_number(row.delta, 3).c_str(), row.iadapt,
                      short_number(row.maxerr, 3).c_str(), short_number(row.maxerr_over_bound, 3).c_str(),
                      short_number(row.maxerrg, 3).c_str(), short_number(row.ratio_local, 6).c_str(),
                      short_number(row.ratio_global, 6).c_str(), row.evals_adaptive, row.evals_equidistant,
                      row.quadrature_oracle ? "  oracle=quadrature" : "");
        os << line;
    }
    return os.str();
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(sep, start);
        out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_double(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw Error(ErrorCode::BadParam, "bad csv number '" + s + "'");
    return v;
}

std::size_t parse_count(const std::string& s) {
    char* end = nullptr;
    const auto v = std::strtoull(s.c_str(), &end, 10);
    if (s.empty() || end != s.c_str() + s.size()) throw Error(ErrorCode::BadParam, "bad csv integer '" + s + "'");
    return static_cast<std::size_t>(v);
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ExperimentRow run_cell(const std::string& family, const ProblemParams& base_params, double eps, double delta,
                       double alpha, int r, BaselineScheme baseline_scheme) {
    ExperimentRow row;
    row.eps = eps;
    row.delta = delta;
    row.alpha = alpha;
    row.r = r;
    try {
        ProblemParams params = base_params;
        params["r"] = r;
        if (family == "paper-sec7") params["delta"] = delta;
        const Problem problem = make_problem(family, params);
        row.quadrature_oracle = !problem.local_solution;

        AdmeshConfig config;
        config.eps = eps;
        config.alpha = alpha;
        config.r = r;
        SolveReport adaptive = admesh_solve(problem, config);
        assess_errors(problem, adaptive);

        BaselineConfig baseline;
        baseline.m = 2 * adaptive.m_hat;
        baseline.r = r;
        baseline.scheme = baseline_scheme;
        SolveReport equidistant = equidistant_solve(problem, baseline);
        assess_errors(problem, equidistant);

        row.iadapt = adaptive.m_hat;
        row.maxerr = adaptive.max_local_error;
        row.bound = adaptive.theorem_bound;
        row.maxerr_over_bound = row.maxerr / row.bound;
        row.maxerrg = adaptive.max_global_error;
        row.equidist_maxerr = equidistant.max_local_error;
        row.equidist_maxerrg = equidistant.max_global_error;
        row.ratio_local = safe_ratio(row.equidist_maxerr, row.maxerr);
        row.ratio_global = safe_ratio(row.equidist_maxerrg, row.maxerrg);
        row.evals_adaptive = adaptive.total_g_evals;
        row.evals_equidistant = equidistant.total_g_evals;
    } catch (const std::exception& e) {
        row.error = e.what();
        if (row.error.empty()) row.error = "failed";
    }
    return row;
}

std::vector<ExperimentRow> run_table(const TableSpec& spec) {
    struct Cell {
        double eps;
        double delta;
    };
    std::vector<Cell> cells;
    for (double eps : spec.eps_list) {
        for (double delta : spec.delta_list) cells.push_back({eps, delta});
    }
    std::vector<ExperimentRow> rows(cells.size());
    unsigned threads = spec.threads != 0 ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(cells.size(), 1)));

    auto work = [&](std::size_t index) {
        rows[index] = run_cell(spec.family, spec.base_params, cells[index].eps, cells[index].delta, spec.alpha, spec.r,
                               spec.baseline);
    };
    if (threads <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) work(i);
        return rows;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> workers;
    for (unsigned t = 0; t < threads; ++t) {
        workers.push_back(std::async(std::launch::async, [&] {
            for (std::size_t i = next++; i < cells.size(); i = next++) work(i);
        }));
    }
    for (auto& w : workers) w.get();
    return rows;
}

Format parse_format(std::string_view name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    if (name == "pretty") return Format::Pretty;
    throw Error(ErrorCode::UnknownFormat, "unknown format '" + std::string(name) + "'");
}

std::string emit(const std::vector<ExperimentRow>& rows, Format format) {
    switch (format) {
        case Format::Csv: {
            std::string out(kCsvHeader);
            out += '\n';
            for (const auto& row : rows) out += csv_row(row) + '\n';
            return out;
        }
        case Format::Json: {
            std::string out = "[";
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i > 0) out += ",\n ";
                out += json_row(rows[i]);
            }
            out += "]\n";
            return out;
        }
        case Format::Pretty:
            return pretty_table(rows);
    }
    throw Error(ErrorCode::UnknownFormat, "unhandled format");
}

std::vector<ExperimentRow> parse_csv(std::string_view text) {
    std::vector<ExperimentRow> rows;
    bool header_seen = false;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != kCsvHeader) throw Error(ErrorCode::UnknownFormat, "unexpected csv header");
            header_seen = true;
            continue;
        }
        const auto fields = split(line, ',');
        if (fields.size() != 15) throw Error(ErrorCode::UnknownFormat, "csv row needs 15 fields");
        ExperimentRow row;
        row.eps = parse_double(fields[0]);
        row.delta = parse_double(fields[1]);
        row.r = static_cast<int>(parse_count(fields[2]));
        row.alpha = parse_double(fields[3]);
        if (fields[4].rfind("ERROR:", 0) == 0) {
            row.error = fields[4].substr(6);
            rows.push_back(row);
            continue;
        }
        row.iadapt = parse_count(fields[4]);
        row.maxerr = parse_double(fields[5]);
        row.bound = parse_double(fields[6]);
        row.maxerr_over_bound = parse_double(fields[7]);
        row.maxerrg = parse_double(fields[8]);
        row.equidist_maxerr = parse_double(fields[9]);
        row.equidist_maxerrg = parse_double(fields[10]);
        row.ratio_local = parse_double(fields[11]);
        row.ratio_global = parse_double(fields[12]);
        row.evals_adaptive = parse_count(fields[13]);
        row.evals_equidistant = parse_count(fields[14]);
        rows.push_back(row);
    }
    if (!header_seen) throw Error(ErrorCode::UnknownFormat, "missing csv header");
    return rows;
}

std::string emit_solve(const Problem& problem, const AdmeshConfig& config, const SolveReport& report) {
    std::ostringstream os;
    os << "{\"problem\":\"" << json_escape(problem.name) << "\",\"a\":" << json_number(problem.a)
       << ",\"b\":" << json_number(problem.b) << ",\"eta\":" << json_number(problem.eta) << ",\"r\":" << config.r
       << ",\"eps\":" << json_number(config.eps) << ",\"alpha\":" << json_number(config.alpha)
       << ",\"m_hat\":" << report.m_hat << ",\"total_g_evals\":" << report.total_g_evals
       << ",\"theorem_bound\":" << json_number(report.theorem_bound)
       << ",\"max_local_error\":" << json_number(report.max_local_error)
       << ",\"max_global_error\":" << json_number(report.max_global_error);
    if (!problem.local_solution) os << ",\"oracle\":\"quadrature\"";
    os << ",\n \"steps\":[";
    for (std::size_t i = 0; i < report.steps.size(); ++i) {
        const auto& s = report.steps[i];
        if (i > 0) os << ",";
        os << "\n  {\"i\":" << s.i << ",\"x_hat\":" << json_number(s.x_hat) << ",\"y_hat\":" << json_number(s.y_hat)
           << ",\"c_hat\":" << json_number(s.c_hat) << ",\"h\":" << json_number(s.h) << ",\"l_bisect\":" << s.l_bisect
           << ",\"g_evals_new\":" << s.g_evals_new << ",\"clamped\":" << (s.clamped ? "true" : "false")
           << ",\"no_sign_change\":" << (s.no_sign_change ? "true" : "false");
        if (i < report.local_errors.size()) os << ",\"local_error\":" << json_number(report.local_errors[i]);
        os << '}';
    }
    os << "],\n \"mesh\":[";
    for (std::size_t i = 0; i < report.mesh.size(); ++i) {
        if (i > 0) os << ",";
        os << "\n  [" << json_number(report.mesh[i].x) << "," << json_number(report.mesh[i].y) << "]";
    }
    os << "]}\n";
    return os.str();
}

std::string emit_optimal_mesh(const Problem& problem, const OptimalMesh& mesh, const GainReport& gain,
                              std::size_t m_eps_target, double eps) {
    std::ostringstream os;
    os << "problem " << problem.name << " r=" << problem.r << " eta=" << format_double(problem.eta) << '\n';
    if (m_eps_target != 0) os << "eps " << format_double(eps) << " m(eps) " << m_eps_target << '\n';
    os << "m " << mesh.m << '\n'
       << "k_star " << format_double(mesh.k_star) << '\n'
       << "S(m) " << format_double(mesh.s_factor) << '\n'
       << "c(f) " << format_double(mesh.c_lo) << '\n'
       << "C(f) " << format_double(mesh.c_hi) << '\n'
       << "equidistant_level " << format_double(gain.equidistant_level) << '\n'
       << "gain " << format_double(gain.gain_ratio) << '\n'
       << "residual " << format_double(mesh.residual) << '\n'
       << "i,x_star,c_bar\n";
    for (std::size_t i = 0; i < mesh.x_star.size(); ++i) {
        os << i << ',' << format_double(mesh.x_star[i]) << ',';
        if (i < mesh.c_bar.size()) os << format_double(mesh.c_bar[i]);
        os << '\n';
    }
    return os.str();
}

std::string emit_constants(int r_max) {
    std::ostringstream os;
    os << "r,exact,float,case\n";
    for (int r = 1; r <= r_max; ++r) {
        const auto c = newton_cotes_constant(r);
        os << r << ',' << c.fraction() << ',' << format_double(c.value_float) << ',' << to_string(c.parity_case)
           << '\n';
    }
    return os.str();
}

}  // namespace admesh::bench
