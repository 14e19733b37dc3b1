// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "smoothdiv/generator.hpp"
#include "smoothdiv/summation.hpp"
#include "smoothdiv/vec.hpp"

namespace smoothdiv {

/// Generalized phi-divergence sum_k p_k * phi(q_k / p_k).
///
/// Zero iff q == p entrywise. Every term goes through the stable phi
/// evaluation; the quotient form of the generator is never used.
inline double d_phi(const GeneratorParams& params, const Vec& q, const PosVec& p) {
    detail::require_same_dim(q.dim(), p.dim(), "d_phi");
    return pairwise_sum(q.dim(),
                        [&](std::size_t k) { return p[k] * phi(params, q[k] / p[k]); });
}

/// Per-coordinate terms of d_phi, in order.
inline std::vector<double> d_phi_terms(const GeneratorParams& params, const Vec& q,
                                       const PosVec& p) {
    detail::require_same_dim(q.dim(), p.dim(), "d_phi_terms");
    std::vector<double> terms(q.dim());
    for (std::size_t k = 0; k < q.dim(); ++k) terms[k] = p[k] * phi(params, q[k] / p[k]);
    return terms;
}

/// l1 distance sum_k |p_k - q_k| (the divergence induced by |t-1|).
inline double d_tv(const Vec& q, const PosVec& p) {
    detail::require_same_dim(q.dim(), p.dim(), "d_tv");
    return pairwise_sum(q.dim(), [&](std::size_t k) { return std::abs(p[k] - q[k]); });
}

/// Scaled shift divergence sum_k p_k * phi((q_k - qstar_k)/(p_k*sigma_k) + 1).
///
/// Here p acts as a weight/scaling rather than a reference point; the
/// value is zero iff q == qstar.
inline double d_new(const GeneratorParams& params, const Vec& q, const Vec& qstar,
                    const PosVec& p, const PosVec& sigma) {
    detail::require_same_dim(q.dim(), qstar.dim(), "d_new");
    detail::require_same_dim(q.dim(), p.dim(), "d_new");
    detail::require_same_dim(q.dim(), sigma.dim(), "d_new");
    return pairwise_sum(q.dim(), [&](std::size_t k) {
        return p[k] * phi(params, (q[k] - qstar[k]) / (p[k] * sigma[k]) + 1.0);
    });
}

/// Per-coordinate terms of d_new, in order.
inline std::vector<double> d_new_terms(const GeneratorParams& params, const Vec& q,
                                       const Vec& qstar, const PosVec& p,
                                       const PosVec& sigma) {
    detail::require_same_dim(q.dim(), qstar.dim(), "d_new_terms");
    detail::require_same_dim(q.dim(), p.dim(), "d_new_terms");
    detail::require_same_dim(q.dim(), sigma.dim(), "d_new_terms");
    std::vector<double> terms(q.dim());
    for (std::size_t k = 0; k < q.dim(); ++k)
        terms[k] = p[k] * phi(params, (q[k] - qstar[k]) / (p[k] * sigma[k]) + 1.0);
    return terms;
}

/// Weighted l1 distance sum_k |q_k - qstar_k| / sigma_k.
inline double weighted_l1(const Vec& q, const Vec& qstar, const PosVec& sigma) {
    detail::require_same_dim(q.dim(), qstar.dim(), "weighted_l1");
    detail::require_same_dim(q.dim(), sigma.dim(), "weighted_l1");
    return pairwise_sum(q.dim(),
                        [&](std::size_t k) { return std::abs(q[k] - qstar[k]) / sigma[k]; });
}

/// l1 norm sum_k |q_k|.
inline double l1_norm(const Vec& q) {
    return pairwise_sum(q.dim(), [&](std::size_t k) { return std::abs(q[k]); });
}

}  // namespace smoothdiv
