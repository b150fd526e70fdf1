#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace fracbvp {

struct CliOptions {
    std::string command;  // solve | classify | sweep | green-check | poly
    std::string config_path;
    std::string out_path;
    std::optional<int> grid;
    std::optional<double> tol;
    std::optional<int> max_iter;
    // poly
    std::string family = "bernoulli";
    int order_l = 1;
    int m = 2;
    double alpha = 0.5;
    // green-check
    std::vector<double> betas;
};

// Dispatches one command. Structured report records (key = value per line)
// go to `report`; CSV artifacts go to opts.out_path. Nothing is written
// before all validation has passed.
// Exit codes: 0 success, 1 usage, 2 validation, 3 numeric failure.
int run(const CliOptions& opts, std::ostream& report);

std::string format_g17(double x);

}  // namespace fracbvp
