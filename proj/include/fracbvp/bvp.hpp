#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "fracbvp/fraccore.hpp"
#include "fracbvp/green.hpp"

namespace fracbvp {

// Full parameter set of the boundary-value problem
//   D^beta(phi_p(D^alpha u)) + a(t) f(u) = 0,  u(0) = gamma u(h) + lambda,
//   u'(0) = mu, with the four conditions on phi_p(D^alpha u).
struct ProblemSpec {
    Order alpha;   // (1, 2]
    Order beta;    // (3, 4]
    PExponent pq;  // p > 1 and its conjugate
    double gamma;  // [0, 1)
    double h;      // [0, 1]
    double lambda; // > 0
    double mu;     // > 0
    std::function<double(double)> a;  // weight on (0,1), nonnegative
    std::function<double(double)> f;  // nonlinearity on [0,inf), nonnegative

    // range checks plus a 1000-point nonnegativity sample of a and f
    void validate() const;
};

enum class SolveStatus { Converged, MaxIterExceeded, Diverged };

struct Solution {
    GridFunction u{2};
    double fp_residual = 0.0;               // ||u - Tu||_inf
    std::array<double, 2> bc_residuals{0.0, 0.0};
    int iterations = 0;
    bool converged = false;
    SolveStatus status = SolveStatus::MaxIterExceeded;
    std::vector<double> residual_history;   // sup-norm increments per iteration
};

struct SolverOptions {
    int intervals = 257;
    double tol = 1e-10;
    int max_iter = 500;
    // default: 1.0 when f samples nondecreasing, 0.5 otherwise
    std::optional<double> damping;
    std::optional<GridFunction> start;  // default: zero
};

// Solution of D^alpha u = y with u(0) = gamma u(h) + lambda, u'(0) = mu:
//   u = I^alpha y + mu t + [gamma I^alpha y(h) + lambda + gamma mu h]/(1-gamma)
GridFunction solve_linear(const GridFunction& y, const Order& alpha, double gamma,
                          double h, double lambda, double mu);

// |u(0) - gamma u(h) - lambda| and |u'(0) - mu| with u'(0) measured by the
// one-sided difference (-3u_0 + 4u_1 - u_2)/(2 dt). u(h) comes from the grid
// when h lands on a node and from linear interpolation otherwise.
std::array<double, 2> boundary_residuals(const GridFunction& u, double gamma, double h,
                                         double lambda, double mu);
// Same residuals with u(h) reconstructed exactly from the data y of the
// linear sub-problem (off-node h stays at round-off).
std::array<double, 2> boundary_residuals(const GridFunction& u, const GridFunction& y,
                                         const Order& alpha, double gamma, double h,
                                         double lambda, double mu);

// w(t_i) = integral_0^1 H(t_i,tau) y(tau) dtau at every node; w(0) = 0 and
// w'(1) = 0 hold analytically.
GridFunction apply_w(const GridFunction& y, const Order& beta);
GridFunction apply_w_serial(const GridFunction& y, const Order& beta);

// One application of the fixed-point operator:
//   T u = I^alpha phi_q(g) + mu t + [gamma I^alpha phi_q(g)(h) + lambda
//         + gamma mu h]/(1-gamma),  g(s) = integral_0^1 H(s,tau) a f(u) dtau.
GridFunction apply_T(const GridFunction& u, const ProblemSpec& spec);

// Damped Picard iteration u_{k+1} = (1-d) u_k + d T u_k.
Solution solve_fixed_point(const ProblemSpec& spec, const SolverOptions& opts);

struct LowerBoundReport {
    double c_delta = 0.0;
    double sup_norm = 0.0;
    double min_slack = 0.0;  // min over t in [delta,1] of u(t) - c_delta ||u||
    bool pass = false;
};

LowerBoundReport lower_bound_check(const GridFunction& u, double delta,
                                   const Order& alpha, const Order& beta, double q);

}  // namespace fracbvp
