// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

namespace smoothdiv {

namespace detail {

template <class Term>
double pairwise_sum_impl(std::size_t begin, std::size_t count, Term& term) {
    if (count <= 32) {
        double acc = 0.0;
        for (std::size_t i = 0; i < count; ++i) acc += term(begin + i);
        return acc;
    }
    const std::size_t half = count / 2;
    return pairwise_sum_impl(begin, half, term) +
           pairwise_sum_impl(begin + half, count - half, term);
}

}  // namespace detail

/// Balanced pairwise summation of term(0), ..., term(n-1).
///
/// Left-to-right accumulation inside blocks of 32, balanced-tree merge
/// above. The tree depends only on n, so the result is deterministic for
/// a fixed length regardless of where the terms come from. Divergence
/// sums and sweep gaps subtract nearly equal totals, which is why the
/// rounding error of plain sequential summation is not acceptable here.
template <class Term>
double pairwise_sum(std::size_t n, Term&& term) {
    return detail::pairwise_sum_impl(0, n, term);
}

}  // namespace smoothdiv
