// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "smoothdiv/summation.hpp"

namespace smoothdiv {

/// Finite real vector of fixed dimension K >= 1.
class Vec {
public:
    explicit Vec(std::vector<double> entries) : entries_(std::move(entries)) {
        if (entries_.empty()) throw std::invalid_argument("Vec: dimension must be >= 1");
        for (double v : entries_)
            if (!std::isfinite(v)) throw std::domain_error("Vec: entries must be finite");
    }

    static Vec constant(std::size_t k, double value) {
        return Vec(std::vector<double>(k, value));
    }
    static Vec zeros(std::size_t k) { return constant(k, 0.0); }

    std::size_t dim() const { return entries_.size(); }
    double operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<double>& entries() const { return entries_; }

    friend bool operator==(const Vec& a, const Vec& b) { return a.entries_ == b.entries_; }

private:
    std::vector<double> entries_;
};

/// Strictly positive finite vector; hosts weight vectors and scale vectors.
class PosVec {
public:
    explicit PosVec(std::vector<double> entries) : entries_(std::move(entries)) {
        if (entries_.empty()) throw std::invalid_argument("PosVec: dimension must be >= 1");
        for (double v : entries_)
            if (!(std::isfinite(v) && v > 0.0))
                throw std::domain_error("PosVec: entries must be strictly positive and finite");
    }

    static PosVec constant(std::size_t k, double value) {
        return PosVec(std::vector<double>(k, value));
    }

    std::size_t dim() const { return entries_.size(); }
    double operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<double>& entries() const { return entries_; }

    /// Total mass, i.e. the sum of all entries.
    double mass() const {
        return pairwise_sum(entries_.size(), [this](std::size_t i) { return entries_[i]; });
    }

private:
    std::vector<double> entries_;
};

namespace detail {

inline void require_same_dim(std::size_t a, std::size_t b, const char* what) {
    if (a != b) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace detail

}  // namespace smoothdiv
