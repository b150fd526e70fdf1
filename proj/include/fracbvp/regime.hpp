#pragma once

#include <optional>
#include <vector>

#include "fracbvp/bvp.hpp"

namespace fracbvp {

enum class LimitClass { Zero, Finite, Infinite, Indeterminate };

struct LimitEstimate {
    LimitClass cls = LimitClass::Indeterminate;
    double value = 0.0;  // meaningful only for Finite
};

struct H2Witness {
    double sigma = 0.0;  // (0,1), f(x) <= sigma L phi_p(x) on (0,c]
    double c = 0.0;
    double L = 0.0;
    double L_max = 0.0;
};

struct H3Witness {
    double M = 0.0;  // f(x) <= M phi_p(x) for x > d
    double d = 0.0;
    double M_max = 0.0;
};

struct H4Witness {
    double N = 0.0;  // f(x) >= N phi_p(x) for x > e
    double e = 0.0;
    double N_min = 0.0;
    double delta = 0.0;
};

struct HypothesisReport {
    bool h1 = false;
    double h1_value = 0.0;
    bool h1_converged = false;
    std::optional<H2Witness> h2;
    std::optional<H3Witness> h3;
    std::optional<H4Witness> h4;
    bool h5 = false;
    std::optional<double> theta;  // present iff (H6) holds
    LimitEstimate f0;
    LimitEstimate finf;
};

enum class Verdict { ExistsSmallParam, ExistsAllLambda, Unique, NoSolution, Indeterminate };

struct RegimeVerdict {
    double lambda = 0.0;
    double mu = 0.0;
    Verdict verdict = Verdict::Indeterminate;
    double exist_bound = 0.0;     // (1-gamma)(1-phi_q(sigma)) c, NaN without (H2)
    double nonexist_bound = 0.0;  // (1-gamma) e, NaN without (H4)
    double lambda_gamma_mu_h = 0.0;  // lambda + gamma mu h (used in the verdicts)
    double lambda_gamma_mu = 0.0;    // lambda + gamma mu (statement variant, reported)
    bool consistency_warning = false;
};

// limits of f(x)/phi_p(x) at 0+ and +inf from decade sampling
std::pair<LimitEstimate, LimitEstimate> estimate_limits(
    const std::function<double(double)>& f, const PExponent& pq);

std::optional<H2Witness> check_H2(const std::function<double(double)>& f,
                                  const PExponent& pq, const Order& alpha, double gamma,
                                  double h, double h1_value);

std::optional<H3Witness> check_H3(const std::function<double(double)>& f,
                                  const PExponent& pq, const Order& alpha, double gamma,
                                  double h, double h1_value);

std::optional<H4Witness> check_H4(const std::function<double(double)>& f,
                                  const PExponent& pq, const Order& alpha,
                                  const Order& beta, double delta,
                                  const std::function<double(double)>& a);

std::pair<bool, std::optional<double>> check_H5_H6(const std::function<double(double)>& f,
                                                   const PExponent& pq);

// all checkers at once; delta feeds (H4)
HypothesisReport check_hypotheses(const ProblemSpec& spec, double delta);

RegimeVerdict classify(const ProblemSpec& spec, const HypothesisReport& report);

struct Range {
    double start = 0.0;
    double stop = 0.0;
    int count = 1;

    double at(int i) const;
};

struct SolveSummary {
    SolveStatus status = SolveStatus::MaxIterExceeded;
    double fp_residual = 0.0;
    int iterations = 0;
};

struct SweepCell {
    double lambda = 0.0;
    double mu = 0.0;
    RegimeVerdict verdict;
    std::optional<SolveSummary> solve;
};

// verdicts (and optionally solver outcomes) over a lambda x mu grid,
// lambda outer, mu inner; cells evaluated concurrently, assembly ordered
std::vector<SweepCell> sweep(const ProblemSpec& base, double delta, const Range& lambdas,
                             const Range& mus, bool run_solver,
                             const SolverOptions& opts);

const char* to_string(Verdict v);
const char* to_string(SolveStatus s);
const char* to_string(LimitClass c);

}  // namespace fracbvp
