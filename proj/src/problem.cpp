#include "admesh/problem.hpp"

#include "admesh/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <set>
#include <sstream>

namespace admesh {

namespace {

double checked_g(const ScalarFn& g, double y) {
    const double gy = g(y);
    if (!(gy > 0.0) || !std::isfinite(gy)) {
        std::ostringstream os;
        os.precision(17);
        os << "g(" << y << ") = " << gy;
        throw Error(ErrorCode::NonpositiveG, os.str());
    }
    return gy;
}

double param(const ProblemParams& params, const std::string& key, double fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

void reject_unknown_keys(const std::string& name, const ProblemParams& params, std::set<std::string> allowed) {
    allowed.insert({"a", "b", "eta", "r"});
    for (const auto& [key, value] : params) {
        if (!allowed.contains(key)) {
            throw Error(ErrorCode::BadParam, "problem '" + name + "' has no parameter '" + key + "'");
        }
    }
}

// Coefficient of d^k/dy^k (y-1)^{3/2}: prod_{j<k} (3/2 - j).
double falling_power_coefficient(double exponent, int k) {
    double c = 1.0;
    for (int j = 0; j < k; ++j) c *= exponent - j;
    return c;
}

}  // namespace

void Problem::validate() const {
    if (!(a < b)) throw Error(ErrorCode::BadParam, "interval requires a < b");
    if (r < 1) throw Error(ErrorCode::BadParam, "order r must be >= 1");
    if (!g) throw Error(ErrorCode::BadParam, "problem has no g evaluator");
}

double GEvaluator::operator()(double y) const {
    ++count_;
    return checked_g(*g_, y);
}

double local_solution_by_quadrature(const Problem& problem, double x, double y, double t) {
    const double span = t - x;
    if (span == 0.0) return y;
    auto integrand = [&](double s) { return checked_g(problem.g, s); };
    auto integral = [&](double w) {
        if (w == y) return 0.0;
        double err = 0.0;
        const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            integrand, y, w, 8, 1e-14, &err);
        return value;
    };
    auto residual = [&](double w) { return integral(w) - span; };

    // Bracket: grow the Euler guess until the integral passes t - x.
    double lo = y;
    double step = std::abs(span) / checked_g(problem.g, y);
    double hi = y + step;
    int doublings = 0;
    while (residual(hi) < 0.0) {
        lo = hi;
        step *= 2.0;
        hi = y + step;
        if (++doublings > 1000 || !std::isfinite(hi)) {
            throw Error(ErrorCode::NoBracket, "local solution bracket could not be expanded");
        }
    }

    const double f_lo = residual(lo);
    if (f_lo == 0.0) return lo;
    const double f_hi = residual(hi);
    if (f_hi == 0.0) return hi;
    std::uintmax_t iters = 200;
    const auto [left, right] = boost::math::tools::toms748_solve(
        residual, lo, hi, f_lo, f_hi, boost::math::tools::eps_tolerance<double>(52), iters);
    return 0.5 * (left + right);
}

double local_solution(const Problem& problem, double x, double y, double t) {
    if (t == x) return y;
    if (problem.local_solution) return problem.local_solution(x, y, t);
    return local_solution_by_quadrature(problem, x, y, t);
}

double reference_solution(const Problem& problem, double t) {
    return local_solution(problem, problem.a, problem.eta, t);
}

LocalErrorProbe probe_local_error(const Problem& problem, double x_i, double y_i, double x_next, double y_next) {
    LocalErrorProbe p;
    p.x_i = x_i;
    p.x_next = x_next;
    p.y_i = y_i;
    p.y_next = y_next;
    p.true_z = local_solution(problem, x_i, y_i, x_next);
    p.abs_error = std::abs(y_next - p.true_z);
    return p;
}

Problem make_problem(const std::string& name, const ProblemParams& params) {
    Problem p;
    p.name = name;
    p.a = param(params, "a", 0.0);
    p.b = param(params, "b", 1.0);
    const double r_param = param(params, "r", 2.0);
    if (r_param < 1.0 || r_param != std::floor(r_param)) {
        throw Error(ErrorCode::BadParam, "r must be a positive integer");
    }
    p.r = static_cast<int>(r_param);
    const int r = p.r;

    if (name == "paper-sec7") {
        reject_unknown_keys(name, params, {"delta"});
        const double delta = param(params, "delta", 0.1);
        if (!(delta > 0.0)) throw Error(ErrorCode::BadParam, "paper-sec7 requires delta > 0");
        p.eta = 1.0 + delta;
        p.g = [](double y) { return (4.0 / 3.0) * std::pow(y - 1.0, 1.5); };
        const double coeff = (4.0 / 3.0) * falling_power_coefficient(1.5, r);
        p.g_deriv_r = [coeff, r](double y) { return coeff * std::pow(y - 1.0, 1.5 - r); };
        p.local_solution = [](double x, double y, double t) {
            // (y-1)^{5/2} underflows harmlessly for tiny offsets.
            return std::pow(15.0 / 8.0 * (t - x) + std::pow(y - 1.0, 2.5), 0.4) + 1.0;
        };
    } else if (name == "linear-g") {
        reject_unknown_keys(name, params, {});
        p.eta = param(params, "eta", 1.0);
        if (!(p.eta > 0.0)) throw Error(ErrorCode::BadParam, "linear-g requires eta > 0");
        p.g = [](double y) { return y; };
        p.g_deriv_r = [r](double) { return r == 1 ? 1.0 : 0.0; };
        p.local_solution = [](double x, double y, double t) { return std::sqrt(y * y + 2.0 * (t - x)); };
    } else if (name == "const-f") {
        reject_unknown_keys(name, params, {"c"});
        const double c = param(params, "c", 1.0);
        if (!(c > 0.0)) throw Error(ErrorCode::BadParam, "const-f requires c > 0");
        p.eta = param(params, "eta", 0.0);
        p.g = [c](double) { return c; };
        p.g_deriv_r = [](double) { return 0.0; };
        p.local_solution = [c](double x, double y, double t) { return y + (t - x) / c; };
    } else if (name == "exp-g") {
        reject_unknown_keys(name, params, {"beta"});
        const double beta = param(params, "beta", 1.0);
        if (!(beta > 0.0)) throw Error(ErrorCode::BadParam, "exp-g requires beta > 0");
        p.eta = param(params, "eta", 0.0);
        p.g = [beta](double y) { return std::exp(beta * y); };
        const double scale = std::pow(beta, r);
        p.g_deriv_r = [beta, scale](double y) { return scale * std::exp(beta * y); };
        p.local_solution = [beta](double x, double y, double t) {
            return y + std::log1p(beta * (t - x) * std::exp(-beta * y)) / beta;
        };
    } else {
        throw Error(ErrorCode::UnknownProblem, "no built-in problem named '" + name + "'");
    }
    if (params.contains("eta") && name == "paper-sec7") {
        throw Error(ErrorCode::BadParam, "paper-sec7 sets eta = 1 + delta");
    }
    p.validate();
    return p;
}

Problem parse_problem(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    ProblemParams params;
    if (colon != std::string::npos) {
        std::stringstream rest(spec.substr(colon + 1));
        std::string item;
        while (std::getline(rest, item, ',')) {
            if (item.empty()) continue;
            const auto eq = item.find('=');
            if (eq == std::string::npos) throw Error(ErrorCode::BadParam, "expected key=value, got '" + item + "'");
            const std::string key = item.substr(0, eq);
            const std::string text = item.substr(eq + 1);
            std::size_t used = 0;
            double value = 0.0;
            try {
                value = std::stod(text, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != text.size()) {
                throw Error(ErrorCode::BadParam, "bad number '" + text + "' for '" + key + "'");
            }
            params[key] = value;
        }
    }
    return make_problem(name, params);
}

}  // namespace admesh
