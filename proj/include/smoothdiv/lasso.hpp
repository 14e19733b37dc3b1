// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iterator>
#include <stdexcept>
#include <utility>
#include <vector>

#include "smoothdiv/divergence.hpp"
#include "smoothdiv/rng.hpp"
#include "smoothdiv/summation.hpp"
#include "smoothdiv/sweeps.hpp"
#include "smoothdiv/vec.hpp"

namespace smoothdiv {

/// Acceptance threshold on the KKT residual: a solution is considered
/// optimal when kkt_residual <= kKktTolerance * (1 + lambda).
inline constexpr double kKktTolerance = 1e-6;

/// Regression instance: minimize over q
///   sum_i (y_i - sum_k x_{i,k} q_k)^2 + lambda * ||q||_1.
/// Note the residual sum of squares is unscaled (no 1/(2n) factor); a
/// conventional (1/(2n))-scaled penalty translates as
/// lambda_here = 2n * lambda_conventional.
struct LassoProblem {
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<double> x;  // row-major n*k
    std::vector<double> y;  // length n
    double lambda = 0.0;

    void validate() const {
        if (n < 1 || k < 1) throw std::invalid_argument("LassoProblem: n and k must be >= 1");
        if (x.size() != n * k) throw std::invalid_argument("LassoProblem: x must have n*k entries");
        if (y.size() != n) throw std::invalid_argument("LassoProblem: y must have n entries");
        for (double v : x)
            if (!std::isfinite(v)) throw std::domain_error("LassoProblem: x entries must be finite");
        for (double v : y)
            if (!std::isfinite(v)) throw std::domain_error("LassoProblem: y entries must be finite");
        if (!(std::isfinite(lambda) && lambda >= 0.0))
            throw std::domain_error("LassoProblem: lambda must be >= 0 and finite");
    }
};

struct LassoSolution {
    Vec q_hat;
    double objective = 0.0;
    double l1 = 0.0;
    double kkt_residual = 0.0;
    std::size_t iterations = 0;  // full coordinate sweeps performed
    bool converged = false;      // coordinate change fell below tol before max_iter

    bool kkt_accepted(double lambda) const {
        return kkt_residual <= kKktTolerance * (1.0 + lambda);
    }
};

struct SyntheticLasso {
    LassoProblem problem;  // lambda left at 0; set by the caller
    Vec q_true;
};

/// Deterministic synthetic regression instance: standard-normal design,
/// `sparsity` ground-truth coefficients with magnitude in [1, 3) and
/// random sign on randomly chosen coordinates, y = X q_true + noise.
/// Identical arguments reproduce the instance bit for bit.
inline SyntheticLasso make_problem(std::size_t n, std::size_t k, std::size_t sparsity,
                                   double noise_sd, std::uint64_t seed) {
    if (n < 1 || k < 1) throw std::invalid_argument("make_problem: n and k must be >= 1");
    if (sparsity > k) throw std::invalid_argument("make_problem: sparsity must be <= k");
    if (!(std::isfinite(noise_sd) && noise_sd >= 0.0))
        throw std::domain_error("make_problem: noise_sd must be >= 0 and finite");

    LassoProblem problem;
    problem.n = n;
    problem.k = k;
    problem.x.resize(n * k);
    problem.y.assign(n, 0.0);

    Rng design_rng(seed, 0);
    for (double& v : problem.x) v = design_rng.next_normal();

    // Support: partial Fisher-Yates over the coordinate indices.
    Rng support_rng(seed, 1);
    std::vector<std::size_t> order(k);
    for (std::size_t i = 0; i < k; ++i) order[i] = i;
    for (std::size_t i = 0; i < sparsity; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(support_rng.next_below(k - i));
        std::swap(order[i], order[j]);
    }

    std::vector<double> q_true(k, 0.0);
    Rng value_rng(seed, 2);
    for (std::size_t i = 0; i < sparsity; ++i) {
        const double magnitude = 1.0 + 2.0 * value_rng.next_double();
        const double sign = value_rng.next_double() < 0.5 ? -1.0 : 1.0;
        q_true[order[i]] = sign * magnitude;
    }

    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < k; ++j) acc += problem.x[i * k + j] * q_true[j];
        problem.y[i] = acc;
    }
    if (noise_sd > 0.0) {
        Rng noise_rng(seed, 3);
        for (std::size_t i = 0; i < n; ++i) problem.y[i] += noise_sd * noise_rng.next_normal();
    }

    return SyntheticLasso{std::move(problem), Vec(std::move(q_true))};
}

namespace detail {

inline double soft_threshold(double a, double kappa) {
    if (a > kappa) return a - kappa;
    if (a < -kappa) return a + kappa;
    return 0.0;
}

}  // namespace detail

/// Cyclic coordinate descent with exact single-coordinate updates
///   q_j <- S(x_j . (r + x_j q_j), lambda/2) / (x_j . x_j).
///
/// Terminates when the largest coordinate change in a sweep is <= tol or
/// after max_iter sweeps; running out of sweeps is reported through
/// `converged`/`iterations`, not an exception. The returned KKT residual
/// is max_k |2 x_k . r - lambda sign(q_k)| over active coordinates and
/// max(0, |2 x_k . r| - lambda) over zero ones, with r recomputed from
/// scratch at the solution.
///
/// With standardize set, columns are scaled to unit l2 norm first and the
/// penalty applies to the scaled coefficients; q_hat comes back in the
/// original coordinates while objective and kkt_residual describe the
/// standardized problem that was actually solved. Default is off: the
/// objective above is minimized verbatim.
inline LassoSolution solve_lasso(const LassoProblem& problem, double tol = 1e-10,
                                 std::size_t max_iter = 100000,
                                 const std::function<void(std::size_t, double)>& on_sweep = {},
                                 bool standardize = false) {
    problem.validate();
    if (!(std::isfinite(tol) && tol > 0.0))
        throw std::invalid_argument("solve_lasso: tol must be positive");
    const std::size_t n = problem.n;
    const std::size_t k = problem.k;

    // Column-major copy for the per-coordinate dot products.
    std::vector<double> cols(n * k);
    std::vector<double> col_sq(k, 0.0);
    std::vector<double> scale(k, 1.0);
    for (std::size_t j = 0; j < k; ++j) {
        double sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = problem.x[i * k + j];
            cols[j * n + i] = v;
            sq += v * v;
        }
        col_sq[j] = sq;
    }
    if (standardize) {
        for (std::size_t j = 0; j < k; ++j) {
            if (col_sq[j] == 0.0) continue;
            scale[j] = std::sqrt(col_sq[j]);
            double sq = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                cols[j * n + i] /= scale[j];
                sq += cols[j * n + i] * cols[j * n + i];
            }
            col_sq[j] = sq;
        }
    }

    std::vector<double> q(k, 0.0);
    std::vector<double> r = problem.y;  // residual y - X q
    const double half_lambda = 0.5 * problem.lambda;

    const auto objective_of = [&](const std::vector<double>& res) {
        const double rss = pairwise_sum(n, [&](std::size_t i) { return res[i] * res[i]; });
        const double pen = pairwise_sum(k, [&](std::size_t j) { return std::abs(q[j]); });
        return rss + problem.lambda * pen;
    };

    std::size_t sweeps = 0;
    bool converged = false;
    while (sweeps < max_iter) {
        double max_delta = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            if (col_sq[j] == 0.0) continue;
            const double* col = cols.data() + j * n;
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += col[i] * r[i];
            const double rho = dot + col_sq[j] * q[j];
            const double q_new = detail::soft_threshold(rho, half_lambda) / col_sq[j];
            const double delta = q_new - q[j];
            if (delta != 0.0) {
                for (std::size_t i = 0; i < n; ++i) r[i] -= delta * col[i];
                q[j] = q_new;
            }
            max_delta = std::max(max_delta, std::abs(delta));
        }
        ++sweeps;
        if (on_sweep) {
            // Evaluate the objective on a residual recomputed from scratch
            // so incremental drift does not pollute the trace.
            std::vector<double> fresh = problem.y;
            for (std::size_t j = 0; j < k; ++j) {
                if (q[j] == 0.0) continue;
                const double* col = cols.data() + j * n;
                for (std::size_t i = 0; i < n; ++i) fresh[i] -= q[j] * col[i];
            }
            on_sweep(sweeps, objective_of(fresh));
        }
        if (max_delta <= tol) {
            converged = true;
            break;
        }
    }

    // Final residual from scratch, then certificate and summary values.
    std::vector<double> res = problem.y;
    for (std::size_t j = 0; j < k; ++j) {
        if (q[j] == 0.0) continue;
        const double* col = cols.data() + j * n;
        for (std::size_t i = 0; i < n; ++i) res[i] -= q[j] * col[i];
    }
    double kkt = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        const double* col = cols.data() + j * n;
        const double g =
            2.0 * pairwise_sum(n, [&](std::size_t i) { return col[i] * res[i]; });
        const double violation = q[j] != 0.0
                                     ? std::abs(g - problem.lambda * (q[j] > 0.0 ? 1.0 : -1.0))
                                     : std::max(0.0, std::abs(g) - problem.lambda);
        kkt = std::max(kkt, violation);
    }

    const double objective = objective_of(res);
    if (standardize)
        for (std::size_t j = 0; j < k; ++j) q[j] /= scale[j];
    LassoSolution solution{Vec(std::move(q)), objective, 0.0, kkt, sweeps, converged};
    solution.l1 = l1_norm(solution.q_hat);
    return solution;
}

/// Evaluates both smooth surrogates of ||q_hat||_1 over a (beta, m)
/// grid: d_phi with params (alpha, beta, 1/beta) against p = (1/m)*1,
/// and d_new with the same params, qstar = 0, sigma = 1. Rows carry the
/// producing surrogate in their mode tag; gap = ||q_hat||_1 - surrogate.
inline std::vector<SweepRow> surrogate_report(const LassoSolution& solution, double alpha,
                                              const std::vector<double>& beta_grid,
                                              const std::vector<double>& m_family) {
    const std::size_t k = solution.q_hat.dim();
    std::vector<SweepRow> rows =
        sweep_divergence_vs_l1(solution.q_hat, beta_grid, m_family, alpha);
    std::vector<SweepRow> shift_rows = sweep_shift_divergence_vs_weighted_l1(
        solution.q_hat, Vec::zeros(k), PosVec::constant(k, 1.0), beta_grid, m_family, alpha);
    rows.insert(rows.end(), std::make_move_iterator(shift_rows.begin()),
                std::make_move_iterator(shift_rows.end()));
    return rows;
}

}  // namespace smoothdiv
