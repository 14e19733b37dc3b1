// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace smoothdiv {

// A divergence generator in general is a lower-semicontinuous convex
// function phi: R -> [0, inf] with phi(1) = 0, strictly convex at 1,
// whose effective domain has an open interior ]a, b[ containing 1. This
// library ships exactly two instances: the smooth family below, with
// ]a, b[ = ]-inf, inf[ and finite values everywhere, and the kink |t-1|
// (phi_tv). No extended-real return type is needed for either.

/// Parameter triple of the smooth divergence generator.
///
/// alpha  - smoothing width: the generator behaves like a quadratic of
///          curvature ~ ctilde*beta^2/(2*alpha) near t = 1 and approaches
///          the kink ctilde*beta*|t-1| as alpha -> 0.
/// beta   - asymptotic slope factor: phi'(+-inf) = +-ctilde*beta.
/// ctilde - global multiplier.
///
/// All three must be strictly positive and finite; this is checked once
/// at construction so the evaluation routines stay branch-light.
class GeneratorParams {
public:
    GeneratorParams(double alpha, double beta, double ctilde)
        : alpha_(alpha), beta_(beta), ctilde_(ctilde) {
        if (!(std::isfinite(alpha) && alpha > 0.0))
            throw std::domain_error("GeneratorParams: alpha must be positive and finite");
        if (!(std::isfinite(beta) && beta > 0.0))
            throw std::domain_error("GeneratorParams: beta must be positive and finite");
        if (!(std::isfinite(ctilde) && ctilde > 0.0))
            throw std::domain_error("GeneratorParams: ctilde must be positive and finite");
    }

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double ctilde() const { return ctilde_; }

private:
    double alpha_;
    double beta_;
    double ctilde_;
};

/// Value of the generator together with its internal decomposition.
struct GeneratorEval {
    double value;  // phi(t) >= 0
    double u;      // beta*(t-1)/alpha
    double s;      // sqrt(1+u^2), computed as hypot(1, u)
};

namespace detail {

// Beyond this |u|, hypot(1, u) == |u| exactly in double precision and the
// evaluation switches to the asymptotic expression |u| - 1 + log(2/(1+|u|)).
// The two branches agree to well below 1e-12 relative at the switch.
inline constexpr double kGeneratorAsymptoticU = 1e154;

inline void require_finite(double t, const char* what) {
    if (!std::isfinite(t)) throw std::domain_error(std::string(what) + ": argument must be finite");
}

// s - 1 with the cancellation at small |u| removed via (s-1)(s+1) = u^2.
inline double s_minus_one(double u, double s) {
    return std::abs(u) < 1.0 ? u * u / (1.0 + s) : s - 1.0;
}

// f(u) = s - 1 + log(2/(1+s)) = sm1 - log1p(sm1/2), so that
// phi(t) = ctilde*alpha*f(u). f(0) = 0 exactly; f(u) > 0 otherwise.
inline double generator_factor(double u) {
    const double au = std::abs(u);
    if (au > kGeneratorAsymptoticU) {
        if (std::isinf(au)) return au;  // saturate with the argument
        return au - 1.0 + std::numbers::ln2 - std::log1p(au);
    }
    const double s = std::hypot(1.0, u);
    const double sm1 = s_minus_one(u, s);
    return sm1 - std::log1p(0.5 * sm1);
}

}  // namespace detail

/// Smooth generator value
///   phi(t) = ctilde*alpha*{ s - 1 + log(2/(s+1)) },
///   u = beta*(t-1)/alpha, s = sqrt(1+u^2).
///
/// Algebraically identical to the quotient form
/// ctilde*alpha*{ s - 1 + log(2*(s-1)/u^2) } via (s-1)(s+1) = u^2, but
/// finite at t = 1 and free of the cancellation that kills the quotient
/// form for |u| below ~1e-8. phi(1) == 0 bit-exactly; phi(t) > 0 for
/// t != 1 (underflow aside); phi(t) <= ctilde*beta*|t-1| always.
inline double phi(const GeneratorParams& params, double t) {
    detail::require_finite(t, "phi");
    const double u = params.beta() * (t - 1.0) / params.alpha();
    return params.ctilde() * params.alpha() * detail::generator_factor(u);
}

/// phi plus the (u, s) decomposition actually used.
inline GeneratorEval phi_eval(const GeneratorParams& params, double t) {
    detail::require_finite(t, "phi_eval");
    const double u = params.beta() * (t - 1.0) / params.alpha();
    const double au = std::abs(u);
    const double s = au > detail::kGeneratorAsymptoticU ? au : std::hypot(1.0, u);
    return GeneratorEval{params.ctilde() * params.alpha() * detail::generator_factor(u), u, s};
}

/// Exact derivative phi'(t) = ctilde*beta*u/(1+s).
///
/// Strictly increasing, phi'(1) = 0, and phi'(t) -> +-ctilde*beta as
/// t -> +-inf.
inline double phi_prime(const GeneratorParams& params, double t) {
    detail::require_finite(t, "phi_prime");
    const double u = params.beta() * (t - 1.0) / params.alpha();
    if (std::isinf(u)) return std::copysign(params.ctilde() * params.beta(), u);
    const double s = std::hypot(1.0, u);
    return params.ctilde() * params.beta() * u / (1.0 + s);
}

/// Total-variation generator |t-1|.
inline double phi_tv(double t) {
    detail::require_finite(t, "phi_tv");
    return std::abs(t - 1.0);
}

/// phi(t) - ctilde*beta*|t-1|, computed in a form that is <= 0 by
/// construction and exactly 0 at t = 1:
///   gap = ctilde*alpha*( 1/(s+|u|) - 1 - log((1+s)/2) )
/// using s - |u| = 1/(s+|u|).
inline double phi_limit_gap(const GeneratorParams& params, double t) {
    detail::require_finite(t, "phi_limit_gap");
    const double u = params.beta() * (t - 1.0) / params.alpha();
    const double au = std::abs(u);
    if (std::isinf(au)) return -std::numeric_limits<double>::infinity();
    double s, sm1;
    if (au > detail::kGeneratorAsymptoticU) {
        s = au;
        sm1 = au - 1.0;
    } else {
        s = std::hypot(1.0, u);
        sm1 = detail::s_minus_one(u, s);
    }
    return params.ctilde() * params.alpha() *
           (1.0 / (s + au) - 1.0 - std::log1p(0.5 * sm1));
}

}  // namespace smoothdiv
