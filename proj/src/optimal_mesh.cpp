#include "admesh/optimal_mesh.hpp"

#include "admesh/error.hpp"
#include "admesh/nc_constants.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace admesh {

namespace {

void require_derivative(const Problem& problem) {
    if (!problem.g_deriv_r) {
        throw Error(ErrorCode::MissingDerivative, "problem '" + problem.name + "' has no g^(r) evaluator");
    }
}

double density_scale(int r) {
    double factorial = 1.0;
    for (int k = 2; k <= r; ++k) factorial *= k;
    return newton_cotes_constant(r).magnitude() / factorial;
}

double density(const Problem& problem, double y, double scale) {
    const double gy = problem.g(y);
    if (!(gy > 0.0) || !std::isfinite(gy)) throw Error(ErrorCode::NonpositiveG, "g <= 0 in density scan");
    return std::abs(problem.g_deriv_r(y)) / std::pow(gy, problem.r + 2) * scale;
}

double grid_max(const Problem& problem, double lo, double hi, int intervals, double scale) {
    double best = 0.0;
    for (int j = 0; j <= intervals; ++j) {
        const double y = j == intervals ? hi : lo + (hi - lo) * j / intervals;
        best = std::max(best, density(problem, y, scale));
    }
    return best;
}

double sup_density(const Problem& problem, double y_lo, double y_hi, double scale) {
    if (y_hi <= y_lo) return density(problem, y_lo, scale);
    return std::max(grid_max(problem, y_lo, y_hi, 512, scale), grid_max(problem, y_lo, y_hi, 1024, scale));
}

struct Marcher {
    const Problem& problem;
    std::size_t m;
    double scale;
    double power;  // r + 1

    double log_p(double x_lo, double z_lo, double x) const {
        const double cb = sup_density(problem, z_lo, reference_solution(problem, x), scale);
        return std::log(cb) + power * std::log(x - x_lo);
    }

    // Solves p(x_lo, x) = k for x in (x_lo, b); the caller ensures p(x_lo, b) > k.
    double next_point(double x_lo, double z_lo, double log_k) const {
        const double b = problem.b;
        auto psi = [&](double x) { return log_p(x_lo, z_lo, x) - log_k; };
        const double c_point = density(problem, z_lo, scale);
        double hi = std::min(b, x_lo + std::exp((log_k - std::log(c_point)) / power));
        if (hi <= x_lo) hi = b;
        double psi_hi = psi(hi);
        while (psi_hi < 0.0 && hi < b) {
            hi = std::min(b, x_lo + 2.0 * (hi - x_lo));
            psi_hi = psi(hi);
        }
        double lo = x_lo + 0.5 * (hi - x_lo);
        double psi_lo = psi(lo);
        while (psi_lo > 0.0) {
            hi = lo;
            psi_hi = psi_lo;
            lo = x_lo + 0.5 * (lo - x_lo);
            if (!(lo > x_lo)) return hi;
            psi_lo = psi(lo);
        }
        if (psi_lo == 0.0) return lo;
        if (psi_hi == 0.0) return hi;
        std::uintmax_t iters = 200;
        const auto tol = [](double u, double v) { return std::abs(v - u) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(v); };
        const auto [l, h] = boost::math::tools::toms748_solve(psi, lo, hi, psi_lo, psi_hi, tol, iters);
        return 0.5 * (l + h);
    }

    struct Result {
        std::vector<double> x;
        double phi = 0.0;  // decreasing in log k; zero on the equidistributing level
    };

    Result march(double log_k) const {
        Result out;
        const double b = problem.b;
        double x = problem.a;
        out.x.push_back(x);
        for (std::size_t i = 0; i + 1 < m; ++i) {
            const double z = reference_solution(problem, x);
            const double log_p_end = log_p(x, z, b);
            if (log_p_end <= log_k) {
                // Reached b with steps to spare: k is too large.
                const double remaining = static_cast<double>(m - 1 - i);
                out.phi = (log_p_end - log_k) - 1e3 * remaining;
                out.x.push_back(b);
                return out;
            }
            x = next_point(x, z, log_k);
            out.x.push_back(x);
            if (x >= b) {
                out.phi = -1e3;
                return out;
            }
        }
        out.phi = log_p(x, reference_solution(problem, x), b) - log_k;
        out.x.push_back(b);
        return out;
    }
};

}  // namespace

double local_error_density(const Problem& problem, double y) {
    require_derivative(problem);
    return density(problem, y, density_scale(problem.r));
}

double c_bar_states(const Problem& problem, double y_lo, double y_hi) {
    require_derivative(problem);
    return sup_density(problem, y_lo, y_hi, density_scale(problem.r));
}

double c_bar(const Problem& problem, double x_lo, double x_hi) {
    require_derivative(problem);
    const double z_lo = reference_solution(problem, x_lo);
    const double z_hi = x_hi > x_lo ? reference_solution(problem, x_hi) : z_lo;
    return sup_density(problem, z_lo, z_hi, density_scale(problem.r));
}

OptimalMesh equidistribute(const Problem& problem, std::size_t m) {
    problem.validate();
    require_derivative(problem);
    if (m < 1) throw Error(ErrorCode::BadParam, "m must be >= 1");
    const double scale = density_scale(problem.r);
    const double width = problem.b - problem.a;
    const double power = problem.r + 1;

    OptimalMesh out;
    out.m = m;
    {
        const double y_lo = problem.eta;
        const double y_hi = reference_solution(problem, problem.b);
        constexpr int kPoints = 4096;
        out.c_lo = std::numeric_limits<double>::infinity();
        out.c_hi = 0.0;
        for (int j = 0; j < kPoints; ++j) {
            const double y = j == kPoints - 1 ? y_hi : y_lo + (y_hi - y_lo) * j / (kPoints - 1);
            const double v = density(problem, y, scale);
            out.c_lo = std::min(out.c_lo, v);
            out.c_hi = std::max(out.c_hi, v);
        }
    }

    if (m == 1) {
        out.x_star = {problem.a, problem.b};
        out.c_bar = {c_bar(problem, problem.a, problem.b)};
        out.k_star = out.c_bar[0] * std::pow(width, power);
        out.s_factor = out.c_bar[0];
        out.residual = 0.0;
        return out;
    }

    const Marcher marcher{problem, m, scale, power};
    const double log_base = power * std::log(width / static_cast<double>(m));
    auto phi = [&](double log_k) { return marcher.march(log_k).phi; };

    // A-priori bracket from c_lo <= S(m) <= c_hi, widened until it brackets.
    double lo = log_base + std::log(std::max(out.c_lo, 1e-300)) - 1.0;
    double hi = log_base + std::log(std::max(out.c_hi, 1e-300)) + 1.0;
    const double log_min = std::log(1e-300);
    const double log_max = std::log(1e300);
    double phi_lo = phi(lo);
    while (phi_lo < 0.0) {
        lo -= 8.0;
        if (lo < log_min) throw Error(ErrorCode::LevelBracketFail, "no level k >= 1e-300 reaches b");
        phi_lo = phi(lo);
    }
    double phi_hi = phi(hi);
    while (phi_hi > 0.0) {
        hi += 8.0;
        if (hi > log_max) throw Error(ErrorCode::LevelBracketFail, "no level k <= 1e300 reaches b");
        phi_hi = phi(hi);
    }

    double log_k = lo;
    if (phi_lo == 0.0) {
        log_k = lo;
    } else if (phi_hi == 0.0) {
        log_k = hi;
    } else {
        std::uintmax_t iters = 300;
        const auto tol = [](double u, double v) { return std::abs(v - u) <= 1e-15 * std::max(1.0, std::abs(v)); };
        const auto [l, h] = boost::math::tools::toms748_solve(phi, lo, hi, phi_lo, phi_hi, tol, iters);
        // Prefer the side whose final interval is closest to the level.
        log_k = std::abs(phi(l)) < std::abs(phi(h)) ? l : h;
    }

    auto final_march = marcher.march(log_k);
    out.x_star = std::move(final_march.x);
    if (out.x_star.size() != m + 1) {
        throw Error(ErrorCode::LevelBracketFail, "level search converged to a mesh with the wrong size");
    }
    out.x_star.back() = problem.b;
    out.k_star = std::exp(log_k);

    double inv_root_sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double cb = c_bar(problem, out.x_star[i], out.x_star[i + 1]);
        out.c_bar.push_back(cb);
        const double level = cb * std::pow(out.x_star[i + 1] - out.x_star[i], power);
        out.residual = std::max(out.residual, std::abs(level - out.k_star) / out.k_star);
        inv_root_sum += std::pow(1.0 / cb, 1.0 / power);
    }
    out.s_factor = 1.0 / std::pow(inv_root_sum / static_cast<double>(m), power);
    return out;
}

std::size_t m_of_eps(const Problem& problem, double eps) {
    if (!(eps > 0.0)) throw Error(ErrorCode::BadParam, "eps must be positive");
    constexpr double kSlack = 1e-9;
    auto satisfied = [&](std::size_t m) { return equidistribute(problem, m).k_star <= eps * (1.0 + kSlack); };
    if (satisfied(1)) return 1;
    std::size_t fail = 1;
    std::size_t pass = 2;
    while (!satisfied(pass)) {
        fail = pass;
        if (pass > (std::size_t{1} << 40)) throw Error(ErrorCode::LevelBracketFail, "m(eps) search diverged");
        pass *= 2;
    }
    while (pass - fail > 1) {
        const std::size_t mid = fail + (pass - fail) / 2;
        if (satisfied(mid)) {
            pass = mid;
        } else {
            fail = mid;
        }
    }
    return pass;
}

GainReport gain_report(const Problem& problem, const OptimalMesh& mesh) {
    GainReport out;
    out.k_star = mesh.k_star;
    const double width = problem.b - problem.a;
    const double h = width / static_cast<double>(mesh.m);
    const double h_pow = std::pow(h, problem.r + 1);
    for (std::size_t i = 0; i < mesh.m; ++i) {
        const double x_lo = problem.a + width * static_cast<double>(i) / static_cast<double>(mesh.m);
        const double x_hi = i + 1 == mesh.m ? problem.b
                                            : problem.a + width * static_cast<double>(i + 1) / static_cast<double>(mesh.m);
        out.equidistant_level = std::max(out.equidistant_level, c_bar(problem, x_lo, x_hi) * h_pow);
    }
    out.gain_ratio = out.equidistant_level / out.k_star;
    return out;
}

GainReport gain_report(const Problem& problem, std::size_t m) {
    return gain_report(problem, equidistribute(problem, m));
}

}  // namespace admesh
