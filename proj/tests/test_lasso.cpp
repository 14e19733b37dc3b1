// SPDX-License-Identifier: Apache-2.0
#include "smoothdiv/lasso.hpp"

#include <Eigen/Dense>
#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <vector>

using namespace smoothdiv;

namespace {

Eigen::MatrixXd design_matrix(const LassoProblem& problem) {
    Eigen::MatrixXd x(problem.n, problem.k);
    for (std::size_t i = 0; i < problem.n; ++i)
        for (std::size_t j = 0; j < problem.k; ++j)
            x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                problem.x[i * problem.k + j];
    return x;
}

Eigen::VectorXd response(const LassoProblem& problem) {
    return Eigen::Map<const Eigen::VectorXd>(problem.y.data(),
                                             static_cast<Eigen::Index>(problem.n));
}

}  // namespace

TEST_CASE("make_problem validation and determinism") {
    CHECK_THROWS_AS(make_problem(0, 5, 2, 0.1, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_problem(10, 5, 6, 0.1, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_problem(10, 5, 2, -0.1, 1), std::domain_error);

    const auto a = make_problem(200, 50, 5, 0.1, 7);
    const auto b = make_problem(200, 50, 5, 0.1, 7);
    CHECK(a.problem.x == b.problem.x);
    CHECK(a.problem.y == b.problem.y);
    CHECK(a.q_true == b.q_true);

    const auto c = make_problem(200, 50, 5, 0.1, 8);
    CHECK(a.problem.x != c.problem.x);

    std::size_t nonzero = 0;
    for (double v : a.q_true.entries())
        if (v != 0.0) ++nonzero;
    CHECK(nonzero == 5);

    // Under-determined shapes are accepted.
    CHECK_NOTHROW(make_problem(50, 100, 3, 0.0, 3));
}

TEST_CASE("zero signal, zero noise: lasso selects the zero vector") {
    auto instance = make_problem(100, 20, 0, 0.0, 1);
    for (double v : instance.problem.y) CHECK(v == 0.0);
    instance.problem.lambda = 1.0;
    const auto solution = solve_lasso(instance.problem);
    CHECK(solution.converged);
    CHECK(solution.l1 == 0.0);
    CHECK(solution.kkt_residual == 0.0);
}

TEST_CASE("lambda = 0 reproduces the least-squares solution") {
    auto instance = make_problem(120, 20, 6, 0.2, 11);
    instance.problem.lambda = 0.0;
    const auto solution = solve_lasso(instance.problem, 1e-13, 200000);
    REQUIRE(solution.converged);

    const Eigen::MatrixXd x = design_matrix(instance.problem);
    const Eigen::VectorXd ls = x.colPivHouseholderQr().solve(response(instance.problem));
    for (std::size_t j = 0; j < instance.problem.k; ++j) {
        const double expected = ls(static_cast<Eigen::Index>(j));
        CHECK(std::abs(solution.q_hat[j] - expected) <= 1e-8 * (1.0 + std::abs(expected)));
    }
    CHECK(solution.kkt_accepted(0.0));
}

TEST_CASE("large lambda deactivates every coordinate") {
    auto instance = make_problem(80, 15, 4, 0.1, 5);
    const Eigen::MatrixXd x = design_matrix(instance.problem);
    const Eigen::VectorXd xty = x.transpose() * response(instance.problem);
    instance.problem.lambda = 2.0 * xty.cwiseAbs().maxCoeff() * 1.0001;
    const auto solution = solve_lasso(instance.problem);
    CHECK(solution.converged);
    CHECK(solution.l1 == 0.0);
    CHECK(solution.iterations <= 2);
}

TEST_CASE("one-dimensional instances match the analytic soft threshold") {
    Rng rng(51, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 5 + rng.next_below(20);
        LassoProblem problem;
        problem.n = n;
        problem.k = 1;
        problem.x.resize(n);
        problem.y.resize(n);
        for (auto& v : problem.x) v = rng.next_normal();
        for (auto& v : problem.y) v = rng.next_normal();
        problem.lambda = 4.0 * rng.next_double();

        double xty = 0.0, xtx = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            xty += problem.x[i] * problem.y[i];
            xtx += problem.x[i] * problem.x[i];
        }
        const double half = 0.5 * problem.lambda;
        const double expected =
            (xty > half ? xty - half : (xty < -half ? xty + half : 0.0)) / xtx;

        const auto solution = solve_lasso(problem);
        CHECK(solution.converged);
        CHECK(std::abs(solution.q_hat[0] - expected) <= 1e-12 * (1.0 + std::abs(expected)));
    }
}

TEST_CASE("KKT certificate on random desk-scale instances") {
    Rng rng(52, 0);
    for (int trial = 0; trial < 8; ++trial) {
        const std::size_t n = 30 + rng.next_below(120);
        const std::size_t k = 5 + rng.next_below(60);
        const std::size_t sparsity = rng.next_below(std::min(n, k) / 2 + 1);
        auto instance = make_problem(n, k, sparsity, 0.2, 1000 + trial);
        instance.problem.lambda = 0.5 + 10.0 * rng.next_double();
        const auto solution = solve_lasso(instance.problem, 1e-12);
        CHECK(solution.converged);
        CHECK(solution.kkt_accepted(instance.problem.lambda));
        CHECK(solution.l1 == l1_norm(solution.q_hat));
        CHECK(solution.objective >= 0.0);
    }
}

TEST_CASE("objective is non-increasing sweep to sweep") {
    auto instance = make_problem(50, 10, 3, 0.1, 77);
    instance.problem.lambda = 1.5;
    std::vector<double> trace;
    solve_lasso(instance.problem, 1e-12, 100000,
                [&](std::size_t, double objective) { trace.push_back(objective); });
    REQUIRE(trace.size() >= 2);
    for (std::size_t i = 1; i < trace.size(); ++i) CHECK(trace[i] <= trace[i - 1] + 1e-12);
}

TEST_CASE("argmin scale coherence") {
    // Scaling y by c and lambda by c scales the minimizer by c: support
    // and signs unchanged, coefficients within 1e-8 relative.
    auto instance = make_problem(60, 12, 4, 0.1, 91);
    instance.problem.lambda = 2.0;
    const auto base = solve_lasso(instance.problem, 1e-13, 200000);

    const double c = 3.5;
    LassoProblem scaled = instance.problem;
    for (auto& v : scaled.y) v *= c;
    scaled.lambda = c * instance.problem.lambda;
    const auto rescaled = solve_lasso(scaled, 1e-13, 200000);

    REQUIRE(base.converged);
    REQUIRE(rescaled.converged);
    for (std::size_t j = 0; j < instance.problem.k; ++j) {
        const double expected = c * base.q_hat[j];
        if (base.q_hat[j] == 0.0) {
            CHECK(std::abs(rescaled.q_hat[j]) <= 1e-8 * (1.0 + c * base.l1));
        } else {
            CHECK(std::signbit(rescaled.q_hat[j]) == std::signbit(base.q_hat[j]));
            CHECK(std::abs(rescaled.q_hat[j] - expected) <= 1e-8 * std::abs(expected));
        }
    }
}

TEST_CASE("standardized solve") {
    // lambda = 0: the penalty is inert, so standardization must land on
    // the same least-squares point.
    auto instance = make_problem(80, 12, 4, 0.1, 29);
    instance.problem.lambda = 0.0;
    const auto plain = solve_lasso(instance.problem, 1e-13, 200000);
    const auto scaled = solve_lasso(instance.problem, 1e-13, 200000, {}, true);
    REQUIRE(plain.converged);
    REQUIRE(scaled.converged);
    for (std::size_t j = 0; j < instance.problem.k; ++j)
        CHECK(std::abs(scaled.q_hat[j] - plain.q_hat[j]) <=
              1e-8 * (1.0 + std::abs(plain.q_hat[j])));

    // With a penalty, badly scaled columns make the two problems differ;
    // the standardized certificate still holds for the problem solved.
    LassoProblem skewed = instance.problem;
    for (std::size_t i = 0; i < skewed.n; ++i) skewed.x[i * skewed.k] *= 1000.0;
    skewed.lambda = 5.0;
    const auto a = solve_lasso(skewed, 1e-13, 200000);
    const auto b = solve_lasso(skewed, 1e-13, 200000, {}, true);
    REQUIRE(a.converged);
    REQUIRE(b.converged);
    CHECK(b.kkt_accepted(skewed.lambda));
    CHECK(a.q_hat.entries() != b.q_hat.entries());
}

TEST_CASE("non-convergence is flagged, not thrown") {
    auto instance = make_problem(100, 40, 10, 0.3, 13);
    instance.problem.lambda = 0.01;
    const auto solution = solve_lasso(instance.problem, 1e-14, 1);
    CHECK_FALSE(solution.converged);
    CHECK(solution.iterations == 1);
    CHECK(std::isfinite(solution.kkt_residual));
}

TEST_CASE("surrogate_report tags both surrogates and handles q_hat = 0") {
    auto instance = make_problem(40, 8, 0, 0.0, 2);
    instance.problem.lambda = 1.0;
    const auto solution = solve_lasso(instance.problem);
    REQUIRE(solution.l1 == 0.0);

    const auto rows = surrogate_report(solution, 1.0, {1e2, 1e4}, {1e2, 1e4});
    REQUIRE(rows.size() == 8);
    for (const auto& row : rows) {
        CHECK(row.limit_target == 0.0);
        if (row.mode.rfind("dnew", 0) == 0) {
            CHECK(row.divergence_value == 0.0);  // exactly zero at q = qstar = 0
        } else {
            // d_phi at q = 0 is bounded by K/m coordinatewise.
            CHECK(row.divergence_value <= 8.0 / row.family * (1.0 + 1e-12));
            CHECK(row.divergence_value > 0.0);
        }
    }
}

TEST_CASE("surrogate_report approaches the l1 norm on a solved instance") {
    auto instance = make_problem(100, 25, 4, 0.05, 123);
    instance.problem.lambda = 1.0;
    const auto solution = solve_lasso(instance.problem, 1e-12);
    REQUIRE(solution.converged);
    REQUIRE(solution.l1 > 0.5);

    const auto rows = surrogate_report(solution, 1.0, {1e1, 1e2, 1e3, 1e4}, {1e4});
    REQUIRE(rows.size() == 8);
    for (const auto& row : rows) {
        CHECK(row.limit_target == solution.l1);
        if (row.varying == 1e4) CHECK(std::abs(row.gap) <= 1e-2 * solution.l1);
    }
    // The shift surrogate's |gap| decreases along the beta grid.
    for (std::size_t i = 5; i < 8; ++i) CHECK(std::abs(rows[i].gap) <= std::abs(rows[i - 1].gap));
}
