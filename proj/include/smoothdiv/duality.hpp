// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "smoothdiv/generator.hpp"
#include "smoothdiv/rng.hpp"

namespace smoothdiv {

/// Relative tolerance of the Legendre identity check.
inline constexpr double kDualityTolerance = 1e-9;

/// Cumulant function of the generalized Laplace law paired with
/// (params, m_p), and its convex conjugate.
///
/// The underlying random variable is W = 1 + Z1 - Z2 with Z1, Z2 i.i.d.
/// Gamma(shape, rate), shape = m_p*ctilde*alpha, rate = m_p*ctilde*beta.
/// The conjugate of the log-MGF of W then reproduces m_p * phi(t) for
/// every real t; the slope range of the conjugate forces exactly this
/// (shape, rate) assignment. verify_duality() certifies the identity
/// numerically.
class LaplaceDual {
public:
    LaplaceDual(const GeneratorParams& params, double m_p)
        : params_(params),
          m_p_(m_p),
          shape_(m_p * params.ctilde() * params.alpha()),
          rate_(m_p * params.ctilde() * params.beta()) {
        if (!(std::isfinite(m_p) && m_p > 0.0))
            throw std::domain_error("LaplaceDual: m_p must be positive and finite");
        if (!(std::isfinite(shape_) && std::isfinite(rate_)))
            throw std::domain_error("LaplaceDual: shape/rate overflow");
    }

    const GeneratorParams& params() const { return params_; }
    double m_p() const { return m_p_; }
    double shape() const { return shape_; }
    double rate() const { return rate_; }

    /// Log-MGF of W:
    ///   cumulant(z) = z - shape*(log1p(z/rate) + log1p(-z/rate)),
    /// finite exactly on (-rate, rate). cumulant(0) = 0 and
    /// cumulant'(0) = 1 (W has mean 1).
    double cumulant(double z) const {
        if (!(std::abs(z) < rate_))
            throw std::domain_error("cumulant: requires |z| < rate (MGF infinite outside)");
        const double w = z / rate_;
        return z - shape_ * (std::log1p(w) + std::log1p(-w));
    }

    /// cumulant'(z) = 1 + 2*shape*z/((rate-z)*(rate+z)); strictly
    /// increasing and onto all of R.
    double cumulant_prime(double z) const {
        return 1.0 + 2.0 * shape_ * z / ((rate_ - z) * (rate_ + z));
    }

    /// Convex conjugate sup_{z} ( z*t - cumulant(z) ).
    ///
    /// Solved by bisection on cumulant'(z) = t over the bracket
    /// (-rate, rate) shrunk by 1e-15 (the cumulant diverges at the
    /// endpoints), terminating at width 1e-14*rate. The supremum is
    /// >= 0 because z = 0 is feasible, and equals 0 at t = 1.
    double conjugate(double t) const {
        detail::require_finite(t, "conjugate");
        double lo = -rate_ * (1.0 - 1e-15);
        double hi = rate_ * (1.0 - 1e-15);
        double zstar;
        if (cumulant_prime(lo) >= t) {
            zstar = lo;
        } else if (cumulant_prime(hi) <= t) {
            zstar = hi;
        } else {
            int guard = 0;
            while (hi - lo > 1e-14 * rate_ && ++guard < 200) {
                const double mid = lo + 0.5 * (hi - lo);
                (cumulant_prime(mid) < t ? lo : hi) = mid;
            }
            zstar = lo + 0.5 * (hi - lo);
        }
        return std::max(0.0, zstar * t - cumulant(zstar));
    }

    /// n i.i.d. draws of W = 1 + Z1 - Z2. Draw i consumes only RNG
    /// substream i, so the output for a fixed (seed, n) does not depend
    /// on any chunking of the work.
    std::vector<double> sample_w(std::size_t n, std::uint64_t seed) const {
        if (n == 0) throw std::invalid_argument("sample_w: n must be >= 1");
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i) {
            Rng rng(seed, i);
            const double z1 = rng.next_gamma(shape_, rate_);
            const double z2 = rng.next_gamma(shape_, rate_);
            out[i] = 1.0 + z1 - z2;
        }
        return out;
    }

private:
    GeneratorParams params_;
    double m_p_;
    double shape_;
    double rate_;
};

struct DualityReport {
    std::size_t grid_size = 0;
    double max_rel_error = 0.0;
    double worst_t = 0.0;
    bool pass = false;
};

/// Checks conjugate(t) == m_p * phi(t) over a grid; the error at each t
/// is |conjugate - m_p*phi| / (1 + m_p*phi). Passes iff the maximum is
/// at most kDualityTolerance.
inline DualityReport verify_duality(const LaplaceDual& dual, std::span<const double> t_grid) {
    if (t_grid.empty()) throw std::invalid_argument("verify_duality: grid must be nonempty");
    DualityReport report;
    report.grid_size = t_grid.size();
    report.worst_t = t_grid.front();
    for (double t : t_grid) {
        const double expected = dual.m_p() * phi(dual.params(), t);
        const double got = dual.conjugate(t);
        const double err = std::abs(got - expected) / (1.0 + expected);
        if (err > report.max_rel_error) {
            report.max_rel_error = err;
            report.worst_t = t;
        }
    }
    report.pass = report.max_rel_error <= kDualityTolerance;
    return report;
}

}  // namespace smoothdiv
