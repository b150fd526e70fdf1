#include <CLI11.hpp>
#include <iostream>

#include "fracbvp/config.hpp"
#include "fracbvp/expr.hpp"
#include "fracbvp/runner.hpp"

namespace {

void add_common(CLI::App* cmd, fracbvp::CliOptions& opts, bool needs_config) {
    auto* cfg = cmd->add_option("--config", opts.config_path, "key = value config file");
    if (needs_config) cfg->required();
    cmd->add_option("--out", opts.out_path, "output CSV path");
    cmd->add_option("--grid", opts.grid, "number of mesh intervals");
    cmd->add_option("--tol", opts.tol, "solver tolerance");
    cmd->add_option("--max-iter", opts.max_iter, "solver iteration cap");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solver and verification tool for a p-Laplacian fractional "
                 "boundary-value problem"};
    app.require_subcommand(1);

    fracbvp::CliOptions opts;

    auto* solve = app.add_subcommand("solve", "run the fixed-point solver");
    add_common(solve, opts, true);

    auto* classify = app.add_subcommand("classify", "hypothesis checks and verdict");
    add_common(classify, opts, true);

    auto* sweep = app.add_subcommand("sweep", "verdict table over a lambda x mu grid");
    add_common(sweep, opts, true);

    auto* green = app.add_subcommand("green-check", "kernel property summary");
    add_common(green, opts, false);
    green->add_option("--beta", opts.betas, "kernel orders to check");

    auto* poly = app.add_subcommand("poly", "Caputo image of a special polynomial");
    add_common(poly, opts, false);
    poly->add_option("--family", opts.family, "bernoulli | euler | genocchi");
    poly->add_option("--l", opts.order_l, "generating-function power");
    poly->add_option("--m", opts.m, "polynomial degree");
    poly->add_option("--alpha", opts.alpha, "derivative order");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (solve->parsed()) opts.command = "solve";
    else if (classify->parsed()) opts.command = "classify";
    else if (sweep->parsed()) opts.command = "sweep";
    else if (green->parsed()) opts.command = "green-check";
    else opts.command = "poly";

    try {
        return fracbvp::run(opts, std::cout);
    } catch (const fracbvp::expr::ParseError& e) {
        std::cerr << "expression error: " << e.what() << "\n";
        return 2;
    } catch (const fracbvp::expr::EvalError& e) {
        std::cerr << "expression error: " << e.what() << "\n";
        return 2;
    } catch (const fracbvp::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    }
}
