// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "smoothdiv/divergence.hpp"
#include "smoothdiv/generator.hpp"
#include "smoothdiv/vec.hpp"

namespace smoothdiv {

/// Which parameter drives the limit along the grid.
enum class SweepMode {
    kAlphaToZero,          // grid = alpha values; beta, ctilde fixed
    kAlphaOverBetaToZero,  // grid = beta values; ctilde = 1/beta; alpha fixed
    kPToZero,              // grid = m values with p = (1/m)*1; ctilde = 1/beta
};

/// Which divergence family is evaluated.
enum class Surrogate {
    kDivergence,       // d_phi(q, p)
    kShiftDivergence,  // d_new(q, qstar, p, sigma)
};

inline const char* to_string(SweepMode mode) {
    switch (mode) {
        case SweepMode::kAlphaToZero: return "alpha_to_zero";
        case SweepMode::kAlphaOverBetaToZero: return "alpha_over_beta_to_zero";
        case SweepMode::kPToZero: return "p_to_zero";
    }
    return "?";
}

inline const char* to_string(Surrogate surrogate) {
    return surrogate == Surrogate::kDivergence ? "dphi" : "dnew";
}

/// One emitted record of a convergence sweep.
struct SweepRow {
    std::string mode;         // "<surrogate>.<sweep mode>"
    double varying;           // the grid value of this cell
    double family;            // the family value of this cell
    double divergence_value;  // evaluated divergence
    double limit_target;      // the l1-type limit the sweep converges to
    double gap;               // limit_target - divergence_value (signed)
};

/// Grid definition of a convergence sweep.
///
/// grid is the varying parameter (mode-dependent meaning), family the
/// family parameter: m for the alpha/beta modes (p = (1/m)*1), beta for
/// the p-to-zero mode. Rows come out family-major, grid-minor.
struct SweepSpec {
    SweepMode mode = SweepMode::kAlphaOverBetaToZero;
    Surrogate surrogate = Surrogate::kDivergence;
    std::vector<double> grid;
    std::vector<double> family;
    double alpha = 1.0;   // fixed alpha for the non-alpha modes
    double beta = 1.0;    // fixed beta for kAlphaToZero
    double ctilde = 1.0;  // fixed ctilde for kAlphaToZero
    Vec q;
    std::optional<Vec> qstar;     // defaults to 0
    std::optional<PosVec> sigma;  // defaults to 1
};

namespace detail {

inline void require_positive_monotone(const std::vector<double>& values, const char* what) {
    if (values.empty()) throw std::invalid_argument(std::string(what) + ": empty grid");
    for (double v : values)
        if (!(std::isfinite(v) && v > 0.0))
            throw std::invalid_argument(std::string(what) + ": grid values must be positive and finite");
    const bool increasing = values.back() >= values.front();
    for (std::size_t i = 1; i < values.size(); ++i) {
        const bool ok = increasing ? values[i] > values[i - 1] : values[i] < values[i - 1];
        if (!ok) throw std::invalid_argument(std::string(what) + ": grid must be strictly monotone");
    }
}

}  // namespace detail

inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    detail::require_positive_monotone(spec.grid, "run_sweep grid");
    detail::require_positive_monotone(spec.family, "run_sweep family");
    const std::size_t k = spec.q.dim();
    const Vec qstar = spec.qstar.value_or(Vec::zeros(k));
    const PosVec sigma = spec.sigma.value_or(PosVec::constant(k, 1.0));
    const bool shift = spec.surrogate == Surrogate::kShiftDivergence;
    const std::string mode_tag =
        std::string(to_string(spec.surrogate)) + "." + to_string(spec.mode);

    const double wl1 = weighted_l1(spec.q, qstar, sigma);
    const double l1 = l1_norm(spec.q);

    std::vector<SweepRow> rows;
    rows.reserve(spec.grid.size() * spec.family.size());
    for (double family : spec.family) {
        for (double varying : spec.grid) {
            double value = 0.0;
            double target = 0.0;
            switch (spec.mode) {
                case SweepMode::kAlphaOverBetaToZero: {
                    // varying = beta, family = m
                    const GeneratorParams params(spec.alpha, varying, 1.0 / varying);
                    const PosVec p = PosVec::constant(k, 1.0 / family);
                    value = shift ? d_new(params, spec.q, qstar, p, sigma)
                                  : d_phi(params, spec.q, p);
                    target = shift ? wl1 : l1;
                    break;
                }
                case SweepMode::kPToZero: {
                    // varying = m, family = beta
                    const GeneratorParams params(spec.alpha, family, 1.0 / family);
                    const PosVec p = PosVec::constant(k, 1.0 / varying);
                    value = shift ? d_new(params, spec.q, qstar, p, sigma)
                                  : d_phi(params, spec.q, p);
                    target = shift ? wl1 : l1;
                    break;
                }
                case SweepMode::kAlphaToZero: {
                    // varying = alpha, family = m
                    const GeneratorParams params(varying, spec.beta, spec.ctilde);
                    const PosVec p = PosVec::constant(k, 1.0 / family);
                    value = shift ? d_new(params, spec.q, qstar, p, sigma)
                                  : d_phi(params, spec.q, p);
                    target = spec.ctilde * spec.beta * (shift ? wl1 : d_tv(spec.q, p));
                    break;
                }
            }
            rows.push_back(SweepRow{mode_tag, varying, family, value, target, target - value});
        }
    }
    return rows;
}

/// Fig-style sweep of d_phi with params (alpha, beta, 1/beta) against
/// p = (1/m)*1; the limit target is ||q||_1.
inline std::vector<SweepRow> sweep_divergence_vs_l1(const Vec& q,
                                                    const std::vector<double>& beta_grid,
                                                    const std::vector<double>& m_family,
                                                    double alpha) {
    SweepSpec spec{SweepMode::kAlphaOverBetaToZero, Surrogate::kDivergence,
                   beta_grid,  m_family,            alpha,
                   1.0,        1.0,                 q,
                   std::nullopt, std::nullopt};
    return run_sweep(spec);
}

/// Same sweep for the scaled shift divergence; the limit target is the
/// weighted l1 distance sum_k |q_k - qstar_k| / sigma_k.
inline std::vector<SweepRow> sweep_shift_divergence_vs_weighted_l1(
    const Vec& q, const Vec& qstar, const PosVec& sigma,
    const std::vector<double>& beta_grid, const std::vector<double>& m_family,
    double alpha) {
    SweepSpec spec{SweepMode::kAlphaOverBetaToZero, Surrogate::kShiftDivergence,
                   beta_grid,  m_family,            alpha,
                   1.0,        1.0,                 q,
                   qstar,      sigma};
    return run_sweep(spec);
}

/// Parameter paths used by check_l1_limits. Defaults follow a geometric
/// schedule of ratio 10 down to 1e-8 (up to 1e8) with a terminal
/// relative bound of 1e-6.
struct LimitSchedules {
    std::vector<double> alpha_down;
    std::vector<double> beta_up;
    std::vector<double> m_up;
    double rel_bound = 1e-6;
};

inline std::vector<double> geometric_schedule(double first, double last, double ratio) {
    std::vector<double> values;
    if (last >= first)
        for (double v = first; v <= last * (1.0 + 1e-12); v *= ratio) values.push_back(v);
    else
        for (double v = first; v >= last * (1.0 - 1e-12); v /= ratio) values.push_back(v);
    return values;
}

inline LimitSchedules default_limit_schedules() {
    return LimitSchedules{geometric_schedule(1.0, 1e-8, 10.0),
                          geometric_schedule(1.0, 1e8, 10.0),
                          geometric_schedule(1.0, 1e8, 10.0), 1e-6};
}

/// Result of one limit claim: the |gap| trace along the schedule plus
/// the terminal pass/fail against rel_bound * (1 + |target|).
struct LimitCheck {
    std::string claim;
    double target = 0.0;          // limit value (worst probe for generator claims)
    double terminal_value = 0.0;  // divergence/generator value at the terminal point
    double terminal_abs_gap = 0.0;
    double bound = 0.0;
    bool pass = false;
    bool gap_monotone_decreasing = false;  // observed along the schedule, not asserted
    std::vector<double> abs_gaps;
};

struct LimitReport {
    std::vector<LimitCheck> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

namespace detail {

inline bool nonincreasing(const std::vector<double>& xs) {
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (xs[i] > xs[i - 1]) return false;
    return true;
}

// Traces |target - value(x)| along the schedule for a fixed target.
inline LimitCheck trace_limit(std::string claim, const std::vector<double>& schedule,
                              double target, double rel_bound,
                              const std::function<double(double)>& value_at) {
    LimitCheck check;
    check.claim = std::move(claim);
    check.target = target;
    check.bound = rel_bound * (1.0 + std::abs(target));
    for (double x : schedule) {
        const double v = value_at(x);
        check.terminal_value = v;
        check.abs_gaps.push_back(std::abs(target - v));
    }
    check.terminal_abs_gap = check.abs_gaps.back();
    check.pass = check.terminal_abs_gap <= check.bound;
    check.gap_monotone_decreasing = nonincreasing(check.abs_gaps);
    return check;
}

// Generator (pointwise) claims run over a set of probe arguments; each
// probe has its own limit. The recorded trace belongs to the probe with
// the worst terminal ratio |gap| / (1 + |limit|); the claim passes only
// if every probe is within bound at the terminal point.
inline LimitCheck trace_pointwise_limit(
    std::string claim, const std::vector<double>& schedule,
    const std::vector<double>& probes, double rel_bound,
    const std::function<double(double, double)>& phi_at,     // (x, t)
    const std::function<double(double)>& limit_of) {         // t -> limit
    LimitCheck worst;
    bool all_pass = true;
    double worst_ratio = -1.0;
    for (double t : probes) {
        const double target = limit_of(t);
        LimitCheck check = trace_limit(claim, schedule, target, rel_bound,
                                       [&](double x) { return phi_at(x, t); });
        all_pass = all_pass && check.pass;
        const double ratio = check.terminal_abs_gap / (1.0 + std::abs(target));
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            worst = std::move(check);
        }
    }
    worst.pass = all_pass;
    return worst;
}

}  // namespace detail

/// Runs every l1-approximation limit of both divergence families on the
/// given instance and reports per-claim terminal gaps.
///
/// Claims, named by the parameter path they take:
///   generator.*   pointwise limits probed at t_k = q_k / p_k;
///   dphi.*        d_phi against ctilde*beta*d_tv resp. ||q||_1;
///   dnew.*        d_new against the weighted l1 distance.
/// The alpha/beta ratio limits are realized both by alpha decreasing and
/// by beta increasing; the p->0 limits take a uniform (1/m)*1 path, a
/// scaled p/m path and a heterogeneous per-coordinate path
/// p_k * m^-(1 + k/K). Monotone decrease of |gap| is recorded but only
/// the terminal bound is asserted.
inline LimitReport check_l1_limits(const GeneratorParams& base, const Vec& q, const PosVec& p,
                                   const Vec& qstar, const PosVec& sigma,
                                   const LimitSchedules& schedules = default_limit_schedules()) {
    detail::require_same_dim(q.dim(), p.dim(), "check_l1_limits");
    detail::require_same_dim(q.dim(), qstar.dim(), "check_l1_limits");
    detail::require_same_dim(q.dim(), sigma.dim(), "check_l1_limits");
    if (schedules.alpha_down.empty() || schedules.beta_up.empty() || schedules.m_up.empty())
        throw std::invalid_argument("check_l1_limits: schedules must be nonempty");

    const std::size_t k = q.dim();
    const double rel = schedules.rel_bound;
    const double tv = d_tv(q, p);
    const double l1 = l1_norm(q);
    const double wl1 = weighted_l1(q, qstar, sigma);
    const double cb = base.ctilde() * base.beta();

    std::vector<double> probes(k);
    for (std::size_t i = 0; i < k; ++i) probes[i] = q[i] / p[i];

    LimitReport report;

    report.checks.push_back(detail::trace_pointwise_limit(
        "generator.alpha_to_zero", schedules.alpha_down, probes, rel,
        [&](double a, double t) { return phi(GeneratorParams(a, base.beta(), base.ctilde()), t); },
        [&](double t) { return cb * std::abs(t - 1.0); }));

    report.checks.push_back(detail::trace_pointwise_limit(
        "generator.alpha_over_beta_to_zero.alpha_down", schedules.alpha_down, probes, rel,
        [&](double a, double t) { return phi(GeneratorParams(a, base.beta(), 1.0 / base.beta()), t); },
        [](double t) { return std::abs(t - 1.0); }));

    report.checks.push_back(detail::trace_pointwise_limit(
        "generator.alpha_over_beta_to_zero.beta_up", schedules.beta_up, probes, rel,
        [&](double b, double t) { return phi(GeneratorParams(base.alpha(), b, 1.0 / b), t); },
        [](double t) { return std::abs(t - 1.0); }));

    report.checks.push_back(detail::trace_limit(
        "dphi.alpha_to_zero", schedules.alpha_down, cb * tv, rel, [&](double a) {
            return d_phi(GeneratorParams(a, base.beta(), base.ctilde()), q, p);
        }));

    report.checks.push_back(detail::trace_limit(
        "dphi.alpha_over_beta_to_zero.alpha_down", schedules.alpha_down, tv, rel, [&](double a) {
            return d_phi(GeneratorParams(a, base.beta(), 1.0 / base.beta()), q, p);
        }));

    report.checks.push_back(detail::trace_limit(
        "dphi.alpha_over_beta_to_zero.beta_up", schedules.beta_up, tv, rel, [&](double b) {
            return d_phi(GeneratorParams(base.alpha(), b, 1.0 / b), q, p);
        }));

    report.checks.push_back(detail::trace_limit(
        "dphi.p_to_zero.uniform", schedules.m_up, cb * l1, rel, [&](double m) {
            return d_phi(base, q, PosVec::constant(k, 1.0 / m));
        }));

    report.checks.push_back(detail::trace_limit(
        "dphi.p_to_zero.scaled", schedules.m_up, cb * l1, rel, [&](double m) {
            std::vector<double> entries(k);
            for (std::size_t i = 0; i < k; ++i) entries[i] = p[i] / m;
            return d_phi(base, q, PosVec(entries));
        }));

    report.checks.push_back(detail::trace_limit(
        "dphi.p_to_zero.heterogeneous", schedules.m_up, cb * l1, rel, [&](double m) {
            std::vector<double> entries(k);
            for (std::size_t i = 0; i < k; ++i)
                entries[i] = p[i] * std::pow(m, -(1.0 + static_cast<double>(i) / static_cast<double>(k)));
            return d_phi(base, q, PosVec(entries));
        }));

    report.checks.push_back(detail::trace_limit(
        "dnew.alpha_to_zero", schedules.alpha_down, cb * wl1, rel, [&](double a) {
            return d_new(GeneratorParams(a, base.beta(), base.ctilde()), q, qstar, p, sigma);
        }));

    report.checks.push_back(detail::trace_limit(
        "dnew.alpha_over_beta_to_zero.alpha_down", schedules.alpha_down, wl1, rel, [&](double a) {
            return d_new(GeneratorParams(a, base.beta(), 1.0 / base.beta()), q, qstar, p, sigma);
        }));

    report.checks.push_back(detail::trace_limit(
        "dnew.alpha_over_beta_to_zero.beta_up", schedules.beta_up, wl1, rel, [&](double b) {
            return d_new(GeneratorParams(base.alpha(), b, 1.0 / b), q, qstar, p, sigma);
        }));

    report.checks.push_back(detail::trace_limit(
        "dnew.p_to_zero.scaled", schedules.m_up, cb * wl1, rel, [&](double m) {
            std::vector<double> entries(k);
            for (std::size_t i = 0; i < k; ++i) entries[i] = p[i] / m;
            return d_new(base, q, qstar, PosVec(entries), sigma);
        }));

    report.checks.push_back(detail::trace_limit(
        "dnew.p_to_zero.heterogeneous", schedules.m_up, cb * wl1, rel, [&](double m) {
            std::vector<double> entries(k);
            for (std::size_t i = 0; i < k; ++i)
                entries[i] = p[i] * std::pow(m, -(1.0 + static_cast<double>(i) / static_cast<double>(k)));
            return d_new(base, q, qstar, PosVec(entries), sigma);
        }));

    return report;
}

}  // namespace smoothdiv
