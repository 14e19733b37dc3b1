// SPDX-License-Identifier: Apache-2.0
//
// Command line surface: evaluate generator/divergence values, run
// convergence sweeps, check the generalized-Laplace duality, and run the
// synthetic LASSO demo. Outputs are pure functions of the flags and
// input files; all randomness funnels through --seed.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "smoothdiv/smoothdiv.hpp"

namespace {

using nlohmann::json;
using namespace smoothdiv;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct EvalOptions {
    double alpha = 1.0, beta = 1.0, ctilde = 1.0;
    std::optional<double> t;
    std::string q_file, p_file, qstar_file, sigma_file;
    bool shift = false;
    bool tv = false;
    bool wl1 = false;
};

struct SweepOptions {
    std::string mode = "dphi";
    std::string q_file, qstar_file, sigma_file;
    double alpha = 1.0, beta = 1.0, ctilde = 1.0;
    std::string beta_grid, m_family, alpha_grid;
    std::string out = "-";
};

struct DualityOptions {
    double alpha = 1.0, beta = 1.0, ctilde = 1.0, mp = 1.0;
    double t_min = -10.0, t_max = 10.0;
    std::size_t grid_n = 201;
    std::size_t samples = 0;
    std::uint64_t seed = 1;
    std::string out = "-";
};

struct LassoOptions {
    std::size_t n = 200, k = 50, sparsity = 5;
    double noise_sd = 0.1, lambda = 1.0;
    std::uint64_t seed = 1;
    double alpha = 1.0;
    std::string beta_grid = "1e1,1e2,1e3,1e4", m_family = "1e4";
    double tol = 1e-10;
    std::size_t max_iter = 100000;
    bool standardize = false;
    std::string out;
};

Vec load_vec(const std::string& path) { return Vec(read_vector_file(path)); }
PosVec load_pos_vec(const std::string& path) { return PosVec(read_vector_file(path)); }

void write_text(const std::string& out, const std::string& text) {
    if (out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream file(out);
    if (!file) throw std::invalid_argument("cannot open output file '" + out + "'");
    file << text;
}

int run_eval(const EvalOptions& opt) {
    if (opt.tv) {
        if (opt.q_file.empty() || opt.p_file.empty())
            throw std::invalid_argument("--tv requires --q and --p");
        const Vec q = load_vec(opt.q_file);
        std::cout << format_double(d_tv(q, load_pos_vec(opt.p_file))) << '\n';
        return kExitOk;
    }
    if (opt.wl1) {
        if (opt.q_file.empty()) throw std::invalid_argument("--weighted-l1 requires --q");
        const Vec q = load_vec(opt.q_file);
        const Vec qstar = opt.qstar_file.empty() ? Vec::zeros(q.dim()) : load_vec(opt.qstar_file);
        const PosVec sigma =
            opt.sigma_file.empty() ? PosVec::constant(q.dim(), 1.0) : load_pos_vec(opt.sigma_file);
        std::cout << format_double(weighted_l1(q, qstar, sigma)) << '\n';
        return kExitOk;
    }
    const GeneratorParams params(opt.alpha, opt.beta, opt.ctilde);
    if (opt.t.has_value()) {
        std::cout << format_double(phi(params, *opt.t)) << '\n';
        return kExitOk;
    }
    if (opt.q_file.empty() || opt.p_file.empty())
        throw std::invalid_argument("eval needs either --t or both --q and --p");
    const Vec q = load_vec(opt.q_file);
    const PosVec p = load_pos_vec(opt.p_file);
    if (opt.shift) {
        const Vec qstar = opt.qstar_file.empty() ? Vec::zeros(q.dim()) : load_vec(opt.qstar_file);
        const PosVec sigma =
            opt.sigma_file.empty() ? PosVec::constant(q.dim(), 1.0) : load_pos_vec(opt.sigma_file);
        std::cout << format_double(d_new(params, q, qstar, p, sigma)) << '\n';
        return kExitOk;
    }
    std::cout << format_double(d_phi(params, q, p)) << '\n';
    return kExitOk;
}

int run_sweep_cmd(const SweepOptions& opt) {
    SweepSpec spec{SweepMode::kAlphaOverBetaToZero,
                   Surrogate::kDivergence,
                   {},
                   {},
                   opt.alpha,
                   opt.beta,
                   opt.ctilde,
                   load_vec(opt.q_file),
                   std::nullopt,
                   std::nullopt};
    std::string mode = opt.mode;
    const auto dot = mode.find('.');
    std::string surrogate_name = dot == std::string::npos ? mode : mode.substr(0, dot);
    std::string mode_name = dot == std::string::npos ? "alpha_over_beta_to_zero" : mode.substr(dot + 1);
    if (surrogate_name == "dphi")
        spec.surrogate = Surrogate::kDivergence;
    else if (surrogate_name == "dnew")
        spec.surrogate = Surrogate::kShiftDivergence;
    else
        throw std::invalid_argument("--mode: unknown surrogate '" + surrogate_name + "'");
    if (mode_name == "alpha_over_beta_to_zero")
        spec.mode = SweepMode::kAlphaOverBetaToZero;
    else if (mode_name == "p_to_zero")
        spec.mode = SweepMode::kPToZero;
    else if (mode_name == "alpha_to_zero")
        spec.mode = SweepMode::kAlphaToZero;
    else
        throw std::invalid_argument("--mode: unknown sweep mode '" + mode_name + "'");

    if (!opt.qstar_file.empty()) spec.qstar = load_vec(opt.qstar_file);
    if (!opt.sigma_file.empty()) spec.sigma = load_pos_vec(opt.sigma_file);

    const std::vector<double> ms = parse_grid(opt.m_family, "--m-family");
    switch (spec.mode) {
        case SweepMode::kAlphaOverBetaToZero:
            if (opt.beta_grid.empty()) throw std::invalid_argument("--beta-grid is required");
            spec.grid = parse_grid(opt.beta_grid, "--beta-grid");
            spec.family = ms;
            break;
        case SweepMode::kPToZero:
            if (opt.beta_grid.empty()) throw std::invalid_argument("--beta-grid is required");
            spec.grid = ms;
            spec.family = parse_grid(opt.beta_grid, "--beta-grid");
            break;
        case SweepMode::kAlphaToZero:
            if (opt.alpha_grid.empty())
                throw std::invalid_argument("--alpha-grid is required for mode *.alpha_to_zero");
            spec.grid = parse_grid(opt.alpha_grid, "--alpha-grid");
            spec.family = ms;
            break;
    }

    const std::vector<SweepRow> rows = run_sweep(spec);
    std::ostringstream csv;
    write_sweep_csv(csv, rows);
    write_text(opt.out, csv.str());
    return kExitOk;
}

int run_duality_check(const DualityOptions& opt) {
    if (opt.grid_n < 2) throw std::invalid_argument("--grid-n must be >= 2");
    if (!(opt.t_min <= opt.t_max)) throw std::invalid_argument("--t-min must be <= --t-max");
    const GeneratorParams params(opt.alpha, opt.beta, opt.ctilde);
    const LaplaceDual dual(params, opt.mp);

    std::vector<double> grid(opt.grid_n);
    for (std::size_t i = 0; i < opt.grid_n; ++i)
        grid[i] = opt.t_min + (opt.t_max - opt.t_min) * static_cast<double>(i) /
                                  static_cast<double>(opt.grid_n - 1);
    const DualityReport report = verify_duality(dual, grid);

    json doc;
    doc["params"] = {{"alpha", opt.alpha}, {"beta", opt.beta}, {"ctilde", opt.ctilde}};
    doc["m_p"] = opt.mp;
    doc["shape"] = dual.shape();
    doc["rate"] = dual.rate();
    doc["grid_size"] = report.grid_size;
    doc["max_rel_error"] = report.max_rel_error;
    doc["pass"] = report.pass;

    if (opt.samples > 0) {
        const std::vector<double> w = dual.sample_w(opt.samples, opt.seed);
        const double inv_n = 1.0 / static_cast<double>(opt.samples);
        json points = json::array();
        double max_z = 0.0;
        for (double frac : {-0.45, -0.25, 0.1, 0.3, 0.45}) {
            const double z = frac * dual.rate();
            // log-mean-exp of z*w_i against the analytic cumulant.
            double peak = -std::numeric_limits<double>::infinity();
            for (double v : w) peak = std::max(peak, z * v);
            double acc = 0.0;
            for (double v : w) acc += std::exp(z * v - peak);
            const double empirical = peak + std::log(acc * inv_n);
            const double analytic = dual.cumulant(z);
            // Monte-Carlo standard error of the MGF estimate, via the
            // analytic second moment, mapped through log.
            const double mz = std::exp(analytic);
            const double m2z = std::exp(dual.cumulant(2.0 * z));
            const double se = std::sqrt((m2z - mz * mz) * inv_n) / mz;
            const double z_score = std::abs(empirical - analytic) / se;
            max_z = std::max(max_z, z_score);
            points.push_back({{"z", z},
                              {"analytic", analytic},
                              {"empirical", empirical},
                              {"std_error", se},
                              {"z_score", z_score}});
        }
        doc["mc"] = {{"samples", opt.samples},
                     {"seed", opt.seed},
                     {"points", points},
                     {"max_z_score", max_z},
                     {"within_3se", max_z <= 3.0}};
    }

    write_text(opt.out, doc.dump(2) + "\n");
    return report.pass ? kExitOk : kExitCheckFailed;
}

int run_lasso_demo(const LassoOptions& opt) {
    if (opt.out.empty()) throw std::invalid_argument("--out is required");
    SyntheticLasso instance = make_problem(opt.n, opt.k, opt.sparsity, opt.noise_sd, opt.seed);
    instance.problem.lambda = opt.lambda;
    const LassoSolution solution =
        solve_lasso(instance.problem, opt.tol, opt.max_iter, {}, opt.standardize);

    json doc;
    doc["n"] = instance.problem.n;
    doc["k"] = instance.problem.k;
    doc["lambda"] = instance.problem.lambda;
    doc["x"] = instance.problem.x;
    doc["y"] = instance.problem.y;
    doc["q_hat"] = solution.q_hat.entries();
    doc["l1"] = solution.l1;
    doc["kkt_residual"] = solution.kkt_residual;
    doc["iterations"] = solution.iterations;
    std::cout << doc.dump(2) << '\n';

    const std::vector<SweepRow> rows =
        surrogate_report(solution, opt.alpha, parse_grid(opt.beta_grid, "--beta-grid"),
                         parse_grid(opt.m_family, "--m-family"));
    std::ostringstream csv;
    write_sweep_csv(csv, rows);
    write_text(opt.out, csv.str());

    const bool ok = solution.converged && solution.kkt_accepted(opt.lambda);
    return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Smooth divergence surrogates of weighted l1 norms and distances"};
    app.require_subcommand(1);

    EvalOptions eval_opt;
    CLI::App* eval = app.add_subcommand("eval", "Evaluate the generator or a divergence");
    eval->add_option("--alpha", eval_opt.alpha)->check(CLI::PositiveNumber);
    eval->add_option("--beta", eval_opt.beta)->check(CLI::PositiveNumber);
    eval->add_option("--ctilde", eval_opt.ctilde)->check(CLI::PositiveNumber);
    eval->add_option("--t", eval_opt.t, "Scalar mode: print the generator value at t");
    eval->add_option("--q", eval_opt.q_file, "Vector file (one decimal per line, '#' comments)");
    eval->add_option("--p", eval_opt.p_file, "Positive weight vector file");
    eval->add_option("--qstar", eval_opt.qstar_file, "Shift target vector file (default 0)");
    eval->add_option("--sigma", eval_opt.sigma_file, "Positive scale vector file (default 1)");
    eval->add_flag("--shift", eval_opt.shift, "Evaluate the scaled shift divergence");
    eval->add_flag("--tv", eval_opt.tv, "Evaluate the l1 distance sum |p_k - q_k|");
    eval->add_flag("--weighted-l1", eval_opt.wl1, "Evaluate sum |q_k - qstar_k| / sigma_k");

    SweepOptions sweep_opt;
    CLI::App* sweep = app.add_subcommand("sweep", "Emit a convergence sweep as CSV");
    sweep->add_option("--mode", sweep_opt.mode,
                      "dphi|dnew[.alpha_over_beta_to_zero|.p_to_zero|.alpha_to_zero]");
    sweep->add_option("--q", sweep_opt.q_file)->required();
    sweep->add_option("--qstar", sweep_opt.qstar_file);
    sweep->add_option("--sigma", sweep_opt.sigma_file);
    sweep->add_option("--alpha", sweep_opt.alpha)->check(CLI::PositiveNumber);
    sweep->add_option("--beta", sweep_opt.beta, "Fixed beta for *.alpha_to_zero")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--ctilde", sweep_opt.ctilde, "Fixed ctilde for *.alpha_to_zero")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--beta-grid", sweep_opt.beta_grid, "Comma list or lo:hi:n (geometric)");
    sweep->add_option("--m-family", sweep_opt.m_family, "Comma list or lo:hi:n (geometric)")
        ->required();
    sweep->add_option("--alpha-grid", sweep_opt.alpha_grid, "Alpha grid for *.alpha_to_zero");
    sweep->add_option("--out", sweep_opt.out, "Output path or - for stdout");

    DualityOptions dual_opt;
    CLI::App* duality = app.add_subcommand("duality-check",
                                           "Check the Legendre identity of the cumulant function");
    duality->add_option("--alpha", dual_opt.alpha)->check(CLI::PositiveNumber);
    duality->add_option("--beta", dual_opt.beta)->check(CLI::PositiveNumber);
    duality->add_option("--ctilde", dual_opt.ctilde)->check(CLI::PositiveNumber);
    duality->add_option("--mp", dual_opt.mp, "Total mass of the weight vector")
        ->check(CLI::PositiveNumber);
    duality->add_option("--t-min", dual_opt.t_min);
    duality->add_option("--t-max", dual_opt.t_max);
    duality->add_option("--grid-n", dual_opt.grid_n)->check(CLI::Range(std::size_t{2}, std::size_t{10000000}));
    duality->add_option("--samples", dual_opt.samples, "Optional Monte-Carlo MGF sample count");
    duality->add_option("--seed", dual_opt.seed);
    duality->add_option("--out", dual_opt.out, "Output path or - for stdout");

    LassoOptions lasso_opt;
    CLI::App* lasso = app.add_subcommand("lasso-demo",
                                         "Solve a synthetic instance and report l1 surrogates");
    lasso->add_option("--n", lasso_opt.n)->check(CLI::PositiveNumber);
    lasso->add_option("--k", lasso_opt.k)->check(CLI::PositiveNumber);
    lasso->add_option("--sparsity", lasso_opt.sparsity);
    lasso->add_option("--noise-sd", lasso_opt.noise_sd)->check(CLI::NonNegativeNumber);
    lasso->add_option("--lambda", lasso_opt.lambda)->check(CLI::NonNegativeNumber);
    lasso->add_option("--seed", lasso_opt.seed);
    lasso->add_option("--alpha", lasso_opt.alpha)->check(CLI::PositiveNumber);
    lasso->add_option("--beta-grid", lasso_opt.beta_grid);
    lasso->add_option("--m-family", lasso_opt.m_family);
    lasso->add_option("--tol", lasso_opt.tol)->check(CLI::PositiveNumber);
    lasso->add_option("--max-iter", lasso_opt.max_iter)->check(CLI::PositiveNumber);
    lasso->add_flag("--standardize", lasso_opt.standardize,
                    "Scale columns to unit norm, penalize the scaled coefficients");
    lasso->add_option("--out", lasso_opt.out, "Surrogate CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (eval->parsed()) return run_eval(eval_opt);
        if (sweep->parsed()) return run_sweep_cmd(sweep_opt);
        if (duality->parsed()) return run_duality_check(dual_opt);
        if (lasso->parsed()) return run_lasso_demo(lasso_opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    }
    return kExitUsage;
}
