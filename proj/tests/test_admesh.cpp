#include "admesh/admesh.hpp"
#include "admesh/nc_constants.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace admesh;

namespace {

// Extended-precision recomputation of c_hat from its definition.
long double c_hat_long(long double y_hat, long double eps, int r, auto&& g) {
    const long double span = std::pow(eps, 1.0L / (r + 1));
    std::vector<long double> z, c;
    for (int j = 0; j <= r; ++j) {
        z.push_back(y_hat + span * j / r);
        c.push_back(g(z.back()));
    }
    for (int k = 1; k <= r; ++k) {
        for (int j = r; j >= k; --j) c[j] = (c[j] - c[j - 1]) / (z[j] - z[j - k]);
    }
    return std::ldexp(std::fabs(c[r]), r + 1) / std::pow(g(y_hat), static_cast<long double>(r + 2));
}

Problem counting_problem(const Problem& base, std::size_t& calls) {
    Problem p = base;
    p.g = [g = base.g, &calls](double y) {
        ++calls;
        return g(y);
    };
    return p;
}

}  // namespace

TEST_SUITE("admesh_core") {

TEST_CASE("c_hat") {
    const auto constant = make_problem("const-f", {{"c", 2.0}});
    CHECK(c_hat(constant, 0.3, 1e-3, 2).value == 0.0);

    const auto linear = make_problem("linear-g", {{"r", 1}});
    for (double y : {0.5, 1.0, 3.0}) CHECK(c_hat(linear, y, 1e-2, 1).value == doctest::Approx(4.0 / (y * y * y)));

    const auto sec7 = make_problem("paper-sec7", {{"delta", 0.1}});
    const auto coeff = c_hat(sec7, 1.1, 0.01, 2);
    REQUIRE(coeff.evals.size() == 3);
    CHECK(coeff.evals.front().first == 1.1);
    const long double oracle = c_hat_long(1.1L, 0.01L, 2, [](long double y) {
        return 4.0L / 3.0L * std::pow(y - 1.0L, 1.5L);
    });
    CHECK(std::abs(coeff.value - static_cast<double>(oracle)) <= 1e-11 * static_cast<double>(oracle));
    // 50-digit value: 2827772.2091748039507...
    CHECK(std::abs(coeff.value - 2827772.2091748040) <= 1e-9 * 2827772.2);
}

TEST_CASE("next_mesh_point") {
    const double eps = 0.01;
    const double alpha = 0.25;
    const double abs_c = 1.0 / 12.0;
    SUBCASE("unit step") {
        const double c = 8.0 * eps / (abs_c * (1.0 - alpha));
        const auto next = next_mesh_point(0.0, c, eps, alpha, abs_c, 10.0, 2);
        CHECK(next.x_next == doctest::Approx(1.0).epsilon(1e-14));
        CHECK_FALSE(next.clamped);
    }
    SUBCASE("r=2, c=1") {
        const auto next = next_mesh_point(0.0, 1.0, eps, alpha, abs_c, 10.0, 2);
        CHECK(std::abs(next.x_next - 1.0857670466379626) <= 1e-14);
    }
    SUBCASE("clamping and vanishing c_hat") {
        CHECK(next_mesh_point(0.5, 1.0, eps, alpha, abs_c, 1.0, 2).clamped);
        CHECK(next_mesh_point(0.5, 1.0, eps, alpha, abs_c, 1.0, 2).x_next == 1.0);
        const auto zero = next_mesh_point(0.1, 0.0, eps, alpha, abs_c, 1.0, 2);
        CHECK(zero.x_next == 1.0);
        CHECK(zero.clamped);
    }
    SUBCASE("step size grows with eps") {
        for (double c : {1e-3, 1.0, 1e6}) {
            double previous = 0.0;
            for (double e = 1e-12; e < 1.0; e *= 2.0) {
                const double h = next_mesh_point(0.0, c, e, alpha, abs_c, 1e300, 2).x_next;
                CHECK(h >= previous);
                previous = h;
            }
        }
    }
}

TEST_CASE("bisection_depth") {
    CHECK(bisection_depth(1.0, 1.0, 0.5) == 3);
    CHECK(bisection_depth(0.1, 0.1, 0.5) == 1);
    CHECK(bisection_depth(1.0, 1.0, 2.0) == 1);
    // minimality: 2^{l-1} >= 2 f h / eps
    for (double fh : {0.3, 7.0, 1234.5}) {
        const int l = bisection_depth(fh, 1.0, 1e-3);
        CHECK(fh / std::ldexp(1.0, l - 1) <= 0.5e-3);
        CHECK(fh / std::ldexp(1.0, l - 2) > 0.5e-3);
    }
}

TEST_CASE("bisec") {
    const auto constant = build_interpolant([](double) { return 3.0; }, 1.0, 2.0, 1).poly;
    SUBCASE("linear G has its root at the midpoint") {
        const auto out = bisec(constant, 1.0, 2.0, 3.0 * 0.5, 60);
        CHECK(out.y == doctest::Approx(1.5).epsilon(1e-14));
        CHECK_FALSE(out.no_sign_change);
    }
    SUBCASE("zero target converges to the left end") {
        const auto out = bisec(constant, 1.0, 2.0, 0.0, 40);
        CHECK(std::abs(out.y - 1.0) <= std::ldexp(1.0, -40));
    }
    SUBCASE("exactly l halvings") {
        const auto out = bisec(constant, 0.0, 1.0, 3.0 * 0.3, 3);
        // [0,1] -> [0,.5] -> [.25,.5] -> [.25,.375], midpoint .3125
        CHECK(out.y == 0.3125);
    }
    SUBCASE("missing sign change returns the right end") {
        const auto out = bisec(constant, 1.0, 2.0, 10.0, 5);
        CHECK(out.y == 2.0);
        CHECK(out.no_sign_change);
    }
    SUBCASE("linear-g, r=2: within the bisection resolution of the true local solution") {
        const auto problem = make_problem("linear-g", {{"eta", 1.0}});
        const double y = 1.3;
        const double h = 0.05;
        const double eps = 1e-6;
        const double f = 1.0 / y;
        const double y_bar = y + 2.0 * f * h;
        const auto p = build_interpolant(problem.g, y, y_bar, 2).poly;
        const int l = bisection_depth(f, h, eps);
        const auto out = bisec(p, y, y_bar, h, l);
        const double truth = std::sqrt(y * y + 2.0 * h);
        CHECK(std::abs(out.y - truth) <= f * h / std::ldexp(1.0, l - 1));
    }
}

TEST_CASE("bisec performs no g evaluations") {
    std::size_t calls = 0;
    const auto base = make_problem("paper-sec7", {{"delta", 0.1}});
    const auto problem = counting_problem(base, calls);
    const auto p = build_interpolant(problem.g, 1.1, 1.6, 4).poly;
    const std::size_t before = calls;
    for (int l : {1, 5, 30, 60}) (void)bisec(p, 1.1, 1.6, 0.01, l);
    CHECK(calls == before);
}

TEST_CASE("theorem_bound") {
    CHECK(theorem_bound(1.0, 0.25, 2, 1.0 / 12.0) == doctest::Approx(160.5).epsilon(1e-14));
    CHECK(theorem_bound(0.01, 0.25, 2, 1.0 / 12.0) == doctest::Approx(1.605).epsilon(1e-14));
    CHECK(theorem_bound(1.0, 0.0, 1, 0.5) == doctest::Approx(8.5).epsilon(1e-14));
    CHECK(theorem_bound(0.0, 0.25, 2, 1.0 / 12.0) == 0.0);
}

TEST_CASE("admesh_solve") {
    AdmeshConfig config;
    config.alpha = 0.25;
    config.r = 2;

    SUBCASE("constant f takes one step") {
        const auto problem = make_problem("const-f", {{"c", 1.0}});
        for (double eps : {1e-2, 1e-5}) {
            config.eps = eps;
            auto report = admesh_solve(problem, config);
            assess_errors(problem, report);
            CHECK(report.m_hat == 1);
            REQUIRE(report.mesh.size() == 2);
            CHECK(report.mesh[0].x == 0.0);
            CHECK(report.mesh[1].x == 1.0);
            CHECK(report.max_local_error <= eps / 2);
        }
    }
    SUBCASE("paper-sec7 mesh counts") {
        config.eps = 0.01;
        auto coarse = admesh_solve(make_problem("paper-sec7", {{"delta", 0.1}}), config);
        CHECK(coarse.m_hat >= 3);
        CHECK(coarse.m_hat <= 7);

        const auto fine_problem = make_problem("paper-sec7", {{"delta", 1e-4}});
        config.eps = 1e-4;
        auto fine = admesh_solve(fine_problem, config);
        assess_errors(fine_problem, fine);
        CHECK(fine.m_hat >= 25);
        CHECK(fine.m_hat <= 29);
        CHECK(fine.max_local_error <= fine.theorem_bound);
    }
    SUBCASE("structural invariants") {
        for (double delta : {0.1, 1e-8}) {
            for (int r : {1, 2, 3, 4}) {
                const auto problem = make_problem("paper-sec7", {{"delta", delta}, {"r", r}});
                config.r = r;
                config.eps = 1e-4;
                const auto report = admesh_solve(problem, config);
                CAPTURE(delta);
                CAPTURE(r);
                CHECK(report.m_hat == report.mesh.size() - 1);
                CHECK(report.total_g_evals <= 2u * r * report.m_hat);
                std::size_t sum = 0;
                for (const auto& s : report.steps) {
                    sum += s.g_evals_new;
                    CHECK(s.g_evals_new <= 2u * r);
                    CHECK(s.h > 0.0);
                    CHECK(s.l_bisect >= 1);
                }
                CHECK(sum == report.total_g_evals);
                for (std::size_t i = 1; i < report.mesh.size(); ++i) {
                    CHECK(report.mesh[i].x > report.mesh[i - 1].x);
                    CHECK(report.mesh[i].y > report.mesh[i - 1].y);
                }
                CHECK(report.mesh.back().x == problem.b);
                CHECK(report.steps.back().clamped);
            }
        }
    }
    SUBCASE("linear-g: local error within the bisection resolution") {
        const auto problem = make_problem("linear-g", {{"eta", 1.0}});
        for (double eps : {1e-2, 1e-4, 1e-6}) {
            config.r = 2;
            config.eps = eps;
            auto report = admesh_solve(problem, config);
            assess_errors(problem, report);
            for (std::size_t i = 0; i < report.steps.size(); ++i) {
                const auto& s = report.steps[i];
                const double resolution = s.h / s.y_hat / std::ldexp(1.0, s.l_bisect - 1);
                CHECK(report.local_errors[i] <= resolution);
                CHECK(report.local_errors[i] <= eps / 2);
            }
        }
    }
    SUBCASE("configuration errors") {
        const auto problem = make_problem("paper-sec7", {{"delta", 0.1}});
        config.eps = 1e-2;
        auto bad = config;
        bad.eps = 1.5;
        CHECK_ADMESH_ERROR(admesh_solve(problem, bad), BadParam);
        bad = config;
        bad.alpha = 0.5;
        CHECK_ADMESH_ERROR(admesh_solve(problem, bad), BadParam);
        bad = config;
        bad.r = 3;
        CHECK_ADMESH_ERROR(admesh_solve(problem, bad), BadParam);
        bad = config;
        bad.eps = 1e-8;
        bad.max_steps = 3;
        CHECK_ADMESH_ERROR(admesh_solve(problem, bad), StepLimitExceeded);

        Problem negative;
        negative.name = "negative";
        negative.eta = 0.5;
        negative.g = [](double y) { return 1.0 - y; };
        CHECK_ADMESH_ERROR(admesh_solve(negative, config), NonpositiveG);
    }
}

}
