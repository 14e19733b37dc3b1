// SPDX-License-Identifier: Apache-2.0
#include "smoothdiv/generator.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <limits>

#include "printed_form_reference.hpp"
#include "smoothdiv/rng.hpp"

using namespace smoothdiv;
using smoothdiv_test::printed_form_phi;

namespace {

// Frozen reference values, produced by the printed-form evaluation at
// extended precision.
constexpr double kPhiAt0 = 0.22598715591349733;      // alpha=beta=ctilde=1, t=0
constexpr double kPhiAt3Beta2 = 2.1824919835104518;  // alpha=1, beta=2, ctilde=1, t=3
constexpr double kGapAt0 = -0.77401284408650267;     // kPhiAt0 - 1

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

// Log-uniform in [10^lo, 10^hi).
double log_uniform(Rng& rng, double lo, double hi) {
    return std::pow(10.0, lo + (hi - lo) * rng.next_double());
}

GeneratorParams random_params(Rng& rng) {
    return GeneratorParams(log_uniform(rng, -2, 2), log_uniform(rng, -2, 2),
                           log_uniform(rng, -2, 2));
}

// t = 1 +- 10^U[-6, 1]; keeps |u| far away from underflow for the
// parameter ranges above.
double random_t(Rng& rng) {
    const double offset = log_uniform(rng, -6, 1);
    return rng.next_double() < 0.5 ? 1.0 - offset : 1.0 + offset;
}

}  // namespace

TEST_CASE("parameter validation rejects non-positive and non-finite triples") {
    CHECK_THROWS_AS(GeneratorParams(0.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(GeneratorParams(1.0, -2.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(GeneratorParams(1.0, 1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(GeneratorParams(std::nan(""), 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(GeneratorParams(1.0, std::numeric_limits<double>::infinity(), 1.0),
                    std::domain_error);
    CHECK_NOTHROW(GeneratorParams(1e-8, 1e8, 0.5));
}

TEST_CASE("phi pinned values") {
    const GeneratorParams unit(1, 1, 1);

    CHECK(phi(unit, 1.0) == 0.0);  // bit-exact
    CHECK(rel_diff(phi(unit, 0.0), kPhiAt0) < 1e-14);
    CHECK(rel_diff(phi(GeneratorParams(1, 2, 1), 3.0), kPhiAt3Beta2) < 1e-14);

    const double near_one = phi(unit, 1.0 + 1e-12);
    CHECK(near_one >= 0.0);
    CHECK(near_one <= 1e-20);  // quadratic vanishing, ~u^2/4

    CHECK_THROWS_AS(phi(unit, std::numeric_limits<double>::infinity()), std::domain_error);
    CHECK_THROWS_AS(phi(unit, std::nan("")), std::domain_error);
}

TEST_CASE("phi matches the printed form on pinned points") {
    CHECK(rel_diff(phi(GeneratorParams(1, 1, 1), 0.0), printed_form_phi(1, 1, 1, 0.0)) < 1e-15);
    CHECK(rel_diff(phi(GeneratorParams(1, 2, 1), 3.0), printed_form_phi(1, 2, 1, 3.0)) < 1e-15);
    CHECK(rel_diff(phi(GeneratorParams(0.3, 4, 2.5), -7.0), printed_form_phi(0.3, 4, 2.5, -7.0)) <
          1e-15);
}

TEST_CASE("phi_prime pinned values and boundary slopes") {
    const GeneratorParams unit(1, 1, 1);
    CHECK(phi_prime(unit, 1.0) == 0.0);
    CHECK(rel_diff(phi_prime(unit, 2.0), 1.0 / (1.0 + std::sqrt(2.0))) < 1e-15);

    // phi'(t) -> ctilde*beta for t -> +inf; probe far out.
    const GeneratorParams p(1, 3, 2);
    CHECK(std::abs(phi_prime(p, 1e12) - 6.0) < 1e-9);
    CHECK(std::abs(phi_prime(p, -1e12) + 6.0) < 1e-9);
    CHECK(phi_prime(p, std::numeric_limits<double>::max()) == 6.0);
}

TEST_CASE("phi_prime agrees with central differences") {
    Rng rng(2024, 0);
    for (int i = 0; i < 5000; ++i) {
        // beta/alpha capped at 1e2: the FD truncation error grows like
        // ctilde*beta*(beta/alpha)^2*h^2 and would swamp the tolerance
        // for stiffer curvature, saying nothing about phi_prime itself.
        const GeneratorParams params(log_uniform(rng, -1, 1), log_uniform(rng, -1, 1),
                                     log_uniform(rng, -2, 2));
        const double t = random_t(rng);
        const double h = 1e-6 * std::max(1.0, std::abs(t));
        const double numeric = (phi(params, t + h) - phi(params, t - h)) / (2.0 * h);
        const double exact = phi_prime(params, t);
        CHECK(std::abs(exact - numeric) <= 1e-6 * (1.0 + std::abs(exact)));
    }
}

TEST_CASE("phi_tv") {
    CHECK(phi_tv(1.0) == 0.0);
    CHECK(phi_tv(3.0) == 2.0);
    CHECK(phi_tv(-0.5) == 1.5);
    CHECK_THROWS_AS(phi_tv(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("phi_limit_gap pinned values") {
    const GeneratorParams unit(1, 1, 1);
    CHECK(phi_limit_gap(unit, 1.0) == 0.0);
    CHECK(phi_limit_gap(GeneratorParams(0.5, 2, 3), 1.0) == 0.0);
    CHECK(rel_diff(phi_limit_gap(unit, 0.0), kGapAt0) < 1e-14);

    // Smaller alpha tightens the bound.
    const double gap_wide = phi_limit_gap(GeneratorParams(1, 1, 1), 0.0);
    const double gap_tight = phi_limit_gap(GeneratorParams(0.01, 1, 1), 0.0);
    CHECK(gap_tight < 0.0);
    CHECK(std::abs(gap_tight) < std::abs(gap_wide));
}

TEST_CASE("nonnegativity, upper bound and strict convexity on random inputs") {
    Rng rng(7, 0);
    for (int i = 0; i < 100000; ++i) {
        const GeneratorParams params = random_params(rng);
        const double t = random_t(rng);
        const double value = phi(params, t);
        const double bound = params.ctilde() * params.beta() * std::abs(t - 1.0);

        CHECK(value >= 0.0);
        CHECK(value < bound);  // strict for t != 1
        CHECK(phi_limit_gap(params, t) < 0.0);

        const double t2 = random_t(rng);
        if (std::abs(t - t2) < 1e-3 * std::max({1.0, std::abs(t), std::abs(t2)})) continue;
        const double mid = phi(params, 0.5 * (t + t2));
        const double chord = 0.5 * (phi(params, t) + phi(params, t2));
        CHECK(mid <= chord);
    }
}

TEST_CASE("stable form matches the printed form over |u| in [1e-8, 1e8]") {
    const GeneratorParams sets[] = {GeneratorParams(1, 1, 1), GeneratorParams(0.5, 2, 3),
                                    GeneratorParams(2, 0.25, 0.1)};
    for (const auto& params : sets) {
        for (int i = 0; i <= 400; ++i) {
            const double u = std::pow(10.0, -8.0 + 16.0 * i / 400.0);
            for (const double sign : {-1.0, 1.0}) {
                const double t = 1.0 + sign * u * params.alpha() / params.beta();
                if (t == 1.0) continue;
                const double stable = phi(params, t);
                const double reference = printed_form_phi(params.alpha(), params.beta(),
                                                          params.ctilde(), t);
                CHECK(rel_diff(stable, reference) <= 1e-12);
            }
        }
    }
}

TEST_CASE("continuity across the asymptotic switch at |u| ~ 1e154") {
    const GeneratorParams unit(1, 1, 1);
    double previous = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double u = std::pow(10.0, 153.8 + 0.4 * i / 100.0);
        const double value = phi(unit, 1.0 + u);
        CHECK(std::isfinite(value));
        CHECK(rel_diff(value, printed_form_phi(1, 1, 1, 1.0 + u)) <= 1e-12);
        if (i > 0) CHECK(rel_diff(value, previous) < 2e-2);  // no jump along the dense grid
        previous = value;
    }
}

TEST_CASE("phi_eval exposes the (u, s) decomposition") {
    Rng rng(11, 0);
    for (int i = 0; i < 10000; ++i) {
        const GeneratorParams params = random_params(rng);
        const double t = random_t(rng);
        const GeneratorEval eval = phi_eval(params, t);
        CHECK(eval.u == params.beta() * (t - 1.0) / params.alpha());
        CHECK(eval.s >= 1.0);
        CHECK(rel_diff(eval.s, std::hypot(1.0, eval.u)) < 1e-15);
        CHECK(eval.value == phi(params, t));
        if (eval.u != 0.0) CHECK(eval.value > 0.0);
    }
    CHECK(phi_eval(GeneratorParams(1, 1, 1), 1.0).value == 0.0);
    CHECK(phi_eval(GeneratorParams(1, 1, 1), 1.0).u == 0.0);
}

TEST_CASE("pointwise limit schedules: gap decreasing and below bound") {
    Rng rng(13, 0);
    for (int i = 0; i < 200; ++i) {
        // The terminal bound below is proportional to ctilde*beta while
        // the gap at alpha = 1e-8 shrinks only logarithmically in beta,
        // so it is attainable for beta of order one and larger.
        const double beta = log_uniform(rng, -0.5, 1);
        const double ctilde = log_uniform(rng, -1, 0.5);
        const double t = random_t(rng);

        // alpha -> 0 at fixed beta, ctilde.
        {
            const double limit = ctilde * beta * std::abs(t - 1.0);
            double previous = std::numeric_limits<double>::infinity();
            double gap = 0.0;
            for (double alpha = 1.0; alpha >= 0.99e-8; alpha /= 10.0) {
                gap = std::abs(phi(GeneratorParams(alpha, beta, ctilde), t) - limit);
                CHECK(gap <= previous * (1.0 + 1e-12));
                previous = gap;
            }
            CHECK(gap < 1e-6 * ctilde * beta * (1.0 + std::abs(t - 1.0)));
        }

        // beta -> inf with ctilde = 1/beta at fixed alpha.
        {
            const double alpha = log_uniform(rng, -1, 0.5);
            const double limit = std::abs(t - 1.0);
            double previous = std::numeric_limits<double>::infinity();
            double gap = 0.0;
            for (double b = 1.0; b <= 1.01e8; b *= 10.0) {
                gap = std::abs(phi(GeneratorParams(alpha, b, 1.0 / b), t) - limit);
                CHECK(gap <= previous * (1.0 + 1e-12));
                previous = gap;
            }
            CHECK(gap < 1e-6 * (1.0 + std::abs(t - 1.0)));
        }
    }
}
