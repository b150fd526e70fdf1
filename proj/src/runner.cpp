#include "fracbvp/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "fracbvp/config.hpp"
#include "fracbvp/expr.hpp"
#include "fracbvp/polyid.hpp"
#include "fracbvp/regime.hpp"

namespace fracbvp {

namespace {

const std::set<std::string> kSpecKeys = {
    "alpha", "beta", "p", "gamma", "h", "lambda", "mu", "a", "f",
    "delta", "grid", "tol", "max_iter", "damping", "start"};

std::set<std::string> sweep_keys() {
    std::set<std::string> keys = kSpecKeys;
    keys.insert("lambda_range");
    keys.insert("mu_range");
    keys.insert("solve_cells");
    return keys;
}

ProblemSpec build_spec(const RunConfig& cfg) {
    ProblemSpec spec{Order(cfg.get_double("alpha")),
                     Order(cfg.get_double("beta")),
                     PExponent(cfg.get_double("p")),
                     cfg.get_double("gamma", 0.0),
                     cfg.get_double("h", 1.0),
                     cfg.get_double("lambda"),
                     cfg.get_double("mu"),
                     expr::compile(cfg.get("a"), "t"),
                     expr::compile(cfg.get("f"), "u")};
    return spec;
}

SolverOptions build_solver_options(const RunConfig& cfg, const CliOptions& opts) {
    SolverOptions so;
    so.intervals = opts.grid ? *opts.grid : cfg.get_int("grid", 257);
    so.tol = opts.tol ? *opts.tol : cfg.get_double("tol", 1e-10);
    so.max_iter = opts.max_iter ? *opts.max_iter : cfg.get_int("max_iter", 500);
    if (cfg.has("damping")) so.damping = cfg.get_double("damping");
    if (cfg.has("start"))
        so.start = GridFunction(so.intervals, cfg.get_double("start"));
    return so;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write output file: " + path);
    out << content;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

void report_hypotheses(std::ostream& out, const HypothesisReport& rep) {
    out << "h1 = " << bool_str(rep.h1) << "\n";
    out << "h1_value = " << format_g17(rep.h1_value) << "\n";
    out << "h1_converged = " << bool_str(rep.h1_converged) << "\n";
    out << "h2 = " << bool_str(rep.h2.has_value()) << "\n";
    if (rep.h2) {
        out << "h2_sigma = " << format_g17(rep.h2->sigma) << "\n";
        out << "h2_c = " << format_g17(rep.h2->c) << "\n";
        out << "h2_L = " << format_g17(rep.h2->L) << "\n";
        out << "h2_L_max = " << format_g17(rep.h2->L_max) << "\n";
    }
    out << "h3 = " << bool_str(rep.h3.has_value()) << "\n";
    if (rep.h3) {
        out << "h3_M = " << format_g17(rep.h3->M) << "\n";
        out << "h3_d = " << format_g17(rep.h3->d) << "\n";
        out << "h3_M_max = " << format_g17(rep.h3->M_max) << "\n";
    }
    out << "h4 = " << bool_str(rep.h4.has_value()) << "\n";
    if (rep.h4) {
        out << "h4_N = " << format_g17(rep.h4->N) << "\n";
        out << "h4_e = " << format_g17(rep.h4->e) << "\n";
        out << "h4_N_min = " << format_g17(rep.h4->N_min) << "\n";
        out << "h4_delta = " << format_g17(rep.h4->delta) << "\n";
    }
    out << "h5 = " << bool_str(rep.h5) << "\n";
    out << "h6 = " << bool_str(rep.theta.has_value()) << "\n";
    if (rep.theta) out << "theta = " << format_g17(*rep.theta) << "\n";
    out << "f0_class = " << to_string(rep.f0.cls) << "\n";
    if (rep.f0.cls == LimitClass::Finite)
        out << "f0_value = " << format_g17(rep.f0.value) << "\n";
    out << "finf_class = " << to_string(rep.finf.cls) << "\n";
    if (rep.finf.cls == LimitClass::Finite)
        out << "finf_value = " << format_g17(rep.finf.value) << "\n";
}

void report_verdict(std::ostream& out, const RegimeVerdict& v) {
    out << "verdict = " << to_string(v.verdict) << "\n";
    out << "exist_bound = " << format_g17(v.exist_bound) << "\n";
    out << "nonexist_bound = " << format_g17(v.nonexist_bound) << "\n";
    out << "lambda_gamma_mu_h = " << format_g17(v.lambda_gamma_mu_h) << "\n";
    out << "lambda_gamma_mu = " << format_g17(v.lambda_gamma_mu) << "\n";
    out << "consistency_warning = " << bool_str(v.consistency_warning) << "\n";
}

int run_solve(const CliOptions& opts, std::ostream& report) {
    RunConfig cfg = RunConfig::parse_file(opts.config_path);
    cfg.reject_unknown(kSpecKeys);
    const ProblemSpec spec = build_spec(cfg);
    const SolverOptions so = build_solver_options(cfg, opts);
    const double delta = cfg.get_double("delta", 0.5);
    const Solution sol = solve_fixed_point(spec, so);
    const LowerBoundReport lb =
        lower_bound_check(sol.u, delta, spec.alpha, spec.beta, spec.pq.q);
    const CDelta cd = c_delta(spec.alpha, spec.beta, spec.pq.q, delta);

    std::ostringstream rep;
    rep << "command = solve\n";
    rep << "grid = " << so.intervals << "\n";
    rep << "converged = " << bool_str(sol.converged) << "\n";
    rep << "status = " << to_string(sol.status) << "\n";
    rep << "iterations = " << sol.iterations << "\n";
    rep << "fp_residual = " << format_g17(sol.fp_residual) << "\n";
    rep << "bc_residual_0 = " << format_g17(sol.bc_residuals[0]) << "\n";
    rep << "bc_residual_1 = " << format_g17(sol.bc_residuals[1]) << "\n";
    rep << "sup_norm = " << format_g17(sol.u.sup_norm()) << "\n";
    rep << "delta = " << format_g17(delta) << "\n";
    rep << "c_delta = " << format_g17(lb.c_delta) << "\n";
    if (!cd.in_unit_interval)
        rep << "warning = c_delta outside (0,1)\n";
    rep << "lower_bound_min_slack = " << format_g17(lb.min_slack) << "\n";
    rep << "lower_bound_pass = " << bool_str(lb.pass) << "\n";

    if (!opts.out_path.empty()) {
        std::ostringstream csv;
        csv << "t,u\n";
        for (int i = 0; i <= sol.u.intervals(); ++i)
            csv << format_g17(sol.u.node(i)) << "," << format_g17(sol.u[i]) << "\n";
        write_file(opts.out_path, csv.str());
    }
    report << rep.str();
    return sol.converged ? 0 : 3;
}

int run_classify(const CliOptions& opts, std::ostream& report) {
    RunConfig cfg = RunConfig::parse_file(opts.config_path);
    cfg.reject_unknown(kSpecKeys);
    const ProblemSpec spec = build_spec(cfg);
    spec.validate();
    const double delta = cfg.get_double("delta", 0.5);
    const HypothesisReport rep = check_hypotheses(spec, delta);
    const RegimeVerdict verdict = classify(spec, rep);
    const CDelta cd = c_delta(spec.alpha, spec.beta, spec.pq.q, delta);

    std::ostringstream out;
    out << "command = classify\n";
    out << "lambda = " << format_g17(spec.lambda) << "\n";
    out << "mu = " << format_g17(spec.mu) << "\n";
    report_hypotheses(out, rep);
    report_verdict(out, verdict);
    out << "c_delta = " << format_g17(cd.value) << "\n";
    if (!cd.in_unit_interval) out << "warning = c_delta outside (0,1)\n";
    if (!opts.out_path.empty()) write_file(opts.out_path, out.str());
    report << out.str();
    return 0;
}

int run_sweep(const CliOptions& opts, std::ostream& report) {
    RunConfig cfg = RunConfig::parse_file(opts.config_path);
    cfg.reject_unknown(sweep_keys());
    ProblemSpec spec = build_spec(cfg);
    const double delta = cfg.get_double("delta", 0.5);
    const ParsedRange lr = parse_range(cfg.get("lambda_range"));
    const ParsedRange mr = parse_range(cfg.get("mu_range"));
    if (!(lr.start > 0.0) || !(lr.stop > 0.0))
        throw ConfigError("lambda_range values must be > 0");
    if (!(mr.start > 0.0) || !(mr.stop > 0.0))
        throw ConfigError("mu_range values must be > 0");
    const bool run_solver = cfg.get_bool("solve_cells", false);
    const SolverOptions so = build_solver_options(cfg, opts);
    spec.validate();

    const Range lambdas{lr.start, lr.stop, lr.count};
    const Range mus{mr.start, mr.stop, mr.count};
    const auto cells = sweep(spec, delta, lambdas, mus, run_solver, so);

    std::ostringstream csv;
    csv << "lambda,mu,verdict,consistency_warning,exist_bound,nonexist_bound,"
           "h1,h2,h3,h4,h5,h6";
    if (run_solver) csv << ",solve_status,solve_residual,solve_iterations";
    csv << "\n";
    const HypothesisReport rep = check_hypotheses(spec, delta);
    for (const auto& cell : cells) {
        csv << format_g17(cell.lambda) << "," << format_g17(cell.mu) << ","
            << to_string(cell.verdict.verdict) << ","
            << bool_str(cell.verdict.consistency_warning) << ","
            << format_g17(cell.verdict.exist_bound) << ","
            << format_g17(cell.verdict.nonexist_bound) << "," << bool_str(rep.h1)
            << "," << bool_str(rep.h2.has_value()) << ","
            << bool_str(rep.h3.has_value()) << "," << bool_str(rep.h4.has_value())
            << "," << bool_str(rep.h5) << "," << bool_str(rep.theta.has_value());
        if (run_solver) {
            csv << "," << to_string(cell.solve->status) << ","
                << format_g17(cell.solve->fp_residual) << "," << cell.solve->iterations;
        }
        csv << "\n";
    }
    if (!opts.out_path.empty()) write_file(opts.out_path, csv.str());

    report << "command = sweep\n";
    report << "cells = " << cells.size() << "\n";
    report_hypotheses(report, rep);
    return 0;
}

int run_green_check(const CliOptions& opts, std::ostream& report) {
    std::vector<double> betas = opts.betas;
    if (betas.empty()) betas = {3.1, 3.5, 4.0};
    const int n = opts.grid ? *opts.grid : 200;
    if (n < 10) throw std::invalid_argument("green-check: grid too coarse");
    bool all_pass = true;
    std::ostringstream out;
    out << "command = green-check\n";
    out << "grid = " << n << "\n";
    for (double b : betas) {
        const Order beta(b);
        double min_h = 0.0, max_dom = 0.0, max_low = 0.0, max_gap = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double t = static_cast<double>(i) / n;
            for (int j = 0; j <= n; ++j) {
                const double s = static_cast<double>(j) / n;
                const double v = green_eval(t, s, beta);
                const double v1 = green_eval(1.0, s, beta);
                min_h = std::min(min_h, v);
                max_dom = std::max(max_dom, v - v1);
                if (i > 0 && i < n && j > 0 && j < n)
                    max_low = std::max(max_low, std::pow(t, b - 1.0) * v1 - v);
            }
            const double branch1 =
                (t * (b - 1.0) * std::pow(1.0 - t, b - 2.0) - 0.0) / gamma_fn(b);
            const double branch2 = t * (b - 1.0) * std::pow(1.0 - t, b - 2.0) / gamma_fn(b);
            max_gap = std::max(max_gap, std::abs(branch1 - branch2));
        }
        const bool pass = min_h >= -1e-12 && max_dom <= 1e-12 && max_low <= 1e-12 &&
                          max_gap <= 1e-14;
        all_pass = all_pass && pass;
        out << "beta = " << format_g17(b) << "\n";
        out << "min_H = " << format_g17(min_h) << "\n";
        out << "max_domination_violation = " << format_g17(max_dom) << "\n";
        out << "max_lower_bound_violation = " << format_g17(max_low) << "\n";
        out << "max_branch_gap = " << format_g17(max_gap) << "\n";
        out << "pass = " << bool_str(pass) << "\n";
    }
    report << out.str();
    return all_pass ? 0 : 3;
}

int run_poly(const CliOptions& opts, std::ostream& report) {
    Family family;
    if (opts.family == "bernoulli") family = Family::Bernoulli;
    else if (opts.family == "euler") family = Family::Euler;
    else if (opts.family == "genocchi") family = Family::Genocchi;
    else throw std::invalid_argument("poly: family must be bernoulli, euler or genocchi");
    if (opts.m < 0 || opts.m > 40)
        throw std::invalid_argument("poly: m must lie in [0, 40]");
    if (opts.order_l < 1 || opts.order_l > 6)
        throw std::invalid_argument("poly: l must lie in [1, 6]");
    const Order alpha(opts.alpha);
    const FracPoly closed = caputo_closed_form(family, opts.order_l, opts.m, alpha);
    const FracPoly oracle =
        power_rule_oracle(family_polynomial(family, opts.order_l, opts.m), alpha);
    double max_dev = 0.0;
    if (closed.terms.size() != oracle.terms.size()) {
        max_dev = std::numeric_limits<double>::infinity();
    } else {
        for (std::size_t i = 0; i < closed.terms.size(); ++i) {
            const auto& ct = closed.terms[i];
            const auto& ot = oracle.terms[i];
            if (std::abs(ct.exponent - ot.exponent) > 1e-12) {
                max_dev = std::numeric_limits<double>::infinity();
                break;
            }
            max_dev = std::max(max_dev, std::abs(ct.coeff - ot.coeff) /
                                            std::max(1e-300, std::abs(ot.coeff)));
        }
    }
    std::ostringstream out;
    out << "command = poly\n";
    out << "family = " << opts.family << "\n";
    out << "l = " << opts.order_l << "\n";
    out << "m = " << opts.m << "\n";
    out << "alpha = " << format_g17(opts.alpha) << "\n";
    out << "terms = " << closed.terms.size() << "\n";
    for (const auto& term : closed.terms)
        out << "term = " << format_g17(term.coeff) << " * t^"
            << format_g17(term.exponent) << "\n";
    out << "oracle_max_rel_dev = " << format_g17(max_dev) << "\n";
    if (!opts.out_path.empty()) {
        std::ostringstream csv;
        csv << "exponent,coefficient\n";
        for (const auto& term : closed.terms)
            csv << format_g17(term.exponent) << "," << format_g17(term.coeff) << "\n";
        write_file(opts.out_path, csv.str());
    }
    report << out.str();
    return max_dev <= 1e-10 ? 0 : 3;
}

}  // namespace

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

int run(const CliOptions& opts, std::ostream& report) {
    if (opts.command == "solve") return run_solve(opts, report);
    if (opts.command == "classify") return run_classify(opts, report);
    if (opts.command == "sweep") return run_sweep(opts, report);
    if (opts.command == "green-check") return run_green_check(opts, report);
    if (opts.command == "poly") return run_poly(opts, report);
    throw std::invalid_argument("unknown command: " + opts.command);
}

}  // namespace fracbvp
