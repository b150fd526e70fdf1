#include "fracbvp/bvp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fracbvp {

namespace {

void check_nonneg_sample(const std::function<double(double)>& fn, double x,
                         const char* name) {
    const double v = fn(x);
    if (v < -1e-12 || std::isnan(v))
        throw std::invalid_argument(std::string(name) + " evaluates negative at " +
                                    std::to_string(x));
}

bool samples_nondecreasing(const std::function<double(double)>& f) {
    double prev = f(0.0);
    for (int k = 0; k <= 200; ++k) {
        const double x = std::pow(10.0, -6.0 + 9.0 * k / 200.0);
        const double v = f(x);
        if (v < prev - 1e-12 * (1.0 + std::abs(prev))) return false;
        prev = v;
    }
    return true;
}

}  // namespace

void ProblemSpec::validate() const {
    if (!(alpha.value > 1.0 && alpha.value <= 2.0))
        throw std::invalid_argument("ProblemSpec: alpha must lie in (1,2]");
    if (!(beta.value > 3.0 && beta.value <= 4.0))
        throw std::invalid_argument("ProblemSpec: beta must lie in (3,4]");
    if (!(gamma >= 0.0 && gamma < 1.0))
        throw std::invalid_argument("ProblemSpec: gamma must lie in [0,1)");
    if (!(h >= 0.0 && h <= 1.0))
        throw std::invalid_argument("ProblemSpec: h must lie in [0,1]");
    if (!(lambda > 0.0)) throw std::invalid_argument("ProblemSpec: lambda must be > 0");
    if (!(mu > 0.0)) throw std::invalid_argument("ProblemSpec: mu must be > 0");
    if (!a || !f) throw std::invalid_argument("ProblemSpec: a and f must be set");
    for (int i = 0; i < 1000; ++i) {
        check_nonneg_sample(a, (i + 0.5) / 1000.0, "ProblemSpec: a");
        // log-spaced sample of [1e-8, 1e6] plus the origin
        const double x = (i == 0) ? 0.0 : std::pow(10.0, -8.0 + 14.0 * i / 999.0);
        check_nonneg_sample(f, x, "ProblemSpec: f");
    }
}

GridFunction solve_linear(const GridFunction& y, const Order& alpha, double gamma,
                          double h, double lambda, double mu) {
    if (!(gamma >= 0.0 && gamma < 1.0))
        throw std::invalid_argument("solve_linear: gamma must lie in [0,1)");
    if (!(h >= 0.0 && h <= 1.0))
        throw std::invalid_argument("solve_linear: h must lie in [0,1]");
    if (!y.all_finite()) throw std::invalid_argument("solve_linear: y must be finite");
    const GridFunction integral = rl_integral(y, alpha);
    const double integral_h = rl_integral_at(y, alpha, h);
    const double c = (gamma * integral_h + lambda + gamma * mu * h) / (1.0 - gamma);
    GridFunction u(y.intervals());
    for (int i = 0; i <= y.intervals(); ++i)
        u[i] = integral[i] + mu * u.node(i) + c;
    return u;
}

namespace {

std::array<double, 2> residuals_with_uh(const GridFunction& u, double u_h, double gamma,
                                        double lambda, double mu) {
    const double r0 = std::abs(u[0] - gamma * u_h - lambda);
    const double dt = u.spacing();
    const double d0 = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * dt);
    return {r0, std::abs(d0 - mu)};
}

}  // namespace

std::array<double, 2> boundary_residuals(const GridFunction& u, double gamma, double h,
                                         double lambda, double mu) {
    const double x = h * u.intervals();
    const double rounded = std::round(x);
    const double u_h = (std::abs(x - rounded) < 1e-9)
                           ? u[static_cast<int>(rounded)]
                           : u.interp(h);
    return residuals_with_uh(u, u_h, gamma, lambda, mu);
}

std::array<double, 2> boundary_residuals(const GridFunction& u, const GridFunction& y,
                                         const Order& alpha, double gamma, double h,
                                         double lambda, double mu) {
    const double u_h = rl_integral_at(y, alpha, h) + mu * h + u[0];
    return residuals_with_uh(u, u_h, gamma, lambda, mu);
}

namespace {

GridFunction apply_w_impl(const GridFunction& y, const Order& beta, bool parallel) {
    if (!(beta.value > 3.0 && beta.value <= 4.0))
        throw std::domain_error("apply_w: beta must lie in (3,4]");
    const int N = y.intervals();
    const double h = y.spacing();
    const double b = beta.value;
    // H(t,tau) splits into t(b-1)(1-tau)^(b-2) minus the Volterra part, so
    // w(t) = c1 t - I^b y(t) with c1 from one weighted moment pass.
    double A = 0.0;
    for (int j = 0; j < N; ++j) {
        const double lo = j * h;
        const double slope = (y[j + 1] - y[j]) / h;
        const double a0 = y[j] - slope * lo;
        A += detail::moment_one_minus(lo, lo + h, b - 2.0, a0, slope);
    }
    const double c1 = (b - 1.0) * A / std::tgamma(b);
    const auto volterra = detail::pt_grid(y.values(), b, h, parallel);
    GridFunction w(N);
    for (int i = 0; i <= N; ++i)
        w[i] = c1 * w.node(i) - volterra[static_cast<std::size_t>(i)];
    return w;
}

GridFunction damp_mix(const GridFunction& u, const GridFunction& tu, double d) {
    GridFunction next(u.intervals());
    for (int i = 0; i <= u.intervals(); ++i) next[i] = u[i] + d * (tu[i] - u[i]);
    return next;
}

}  // namespace

GridFunction apply_w(const GridFunction& y, const Order& beta) {
    return apply_w_impl(y, beta, true);
}

GridFunction apply_w_serial(const GridFunction& y, const Order& beta) {
    return apply_w_impl(y, beta, false);
}

GridFunction apply_T(const GridFunction& u, const ProblemSpec& spec) {
    const int N = u.intervals();
    const double h = u.spacing();
    const double floor = -1e-10 * (1.0 + u.sup_norm());
    GridFunction z(N);
    for (int j = 0; j <= N; ++j) {
        if (u[j] < floor)
            throw std::invalid_argument("apply_T: u must be nonnegative");
        double av = spec.a(z.node(j));
        if (!std::isfinite(av)) {
            // weight singular exactly at an endpoint: resample just inside
            if (j == 0) av = spec.a(0.25 * h);
            else if (j == N) av = spec.a(1.0 - 0.25 * h);
        }
        const double fv = spec.f(std::max(u[j], 0.0));
        if (fv < -1e-12)
            throw std::invalid_argument("apply_T: f evaluates negative at u = " +
                                        std::to_string(std::max(u[j], 0.0)));
        z[j] = av * fv;
    }
    const GridFunction g = apply_w(z, spec.beta);
    GridFunction v(N);
    for (int j = 0; j <= N; ++j)
        v[j] = std::isfinite(g[j]) ? phi(g[j], spec.pq.q) : g[j];
    if (!v.all_finite()) {
        // overflow inside the nonlinear term: report as divergence upstream
        GridFunction bad(N, std::numeric_limits<double>::infinity());
        return bad;
    }
    return solve_linear(v, spec.alpha, spec.gamma, spec.h, spec.lambda, spec.mu);
}

Solution solve_fixed_point(const ProblemSpec& spec, const SolverOptions& opts) {
    spec.validate();
    if (opts.intervals < 64)
        throw std::invalid_argument("solve_fixed_point: need N >= 64");
    if (!(opts.tol > 0.0)) throw std::invalid_argument("solve_fixed_point: tol must be > 0");
    if (opts.max_iter < 1)
        throw std::invalid_argument("solve_fixed_point: max_iter must be >= 1");
    const double d =
        opts.damping ? *opts.damping : (samples_nondecreasing(spec.f) ? 1.0 : 0.5);
    if (!(d > 0.0 && d <= 1.0))
        throw std::invalid_argument("solve_fixed_point: damping must lie in (0,1]");
    GridFunction u = opts.start ? *opts.start : GridFunction(opts.intervals, 0.0);
    if (u.intervals() != opts.intervals)
        throw std::invalid_argument("solve_fixed_point: start grid size mismatch");

    Solution sol;
    for (int it = 1; it <= opts.max_iter; ++it) {
        sol.iterations = it;
        const GridFunction tu = apply_T(u, spec);
        const GridFunction next = damp_mix(u, tu, d);
        double diff = 0.0;
        for (int i = 0; i <= opts.intervals; ++i)
            diff = std::max(diff, std::abs(next[i] - u[i]));
        sol.residual_history.push_back(diff);
        if (!next.all_finite() || next.sup_norm() > 1e12) {
            sol.status = SolveStatus::Diverged;
            sol.u = u;  // last finite iterate
            sol.fp_residual = diff;
            sol.bc_residuals =
                boundary_residuals(sol.u, spec.gamma, spec.h, spec.lambda, spec.mu);
            return sol;
        }
        u = next;
        if (diff < opts.tol) {
            sol.converged = true;
            sol.status = SolveStatus::Converged;
            break;
        }
    }
    sol.u = u;
    if (sol.converged) {
        const GridFunction tu = apply_T(u, spec);
        double r = 0.0;
        for (int i = 0; i <= opts.intervals; ++i)
            r = std::max(r, std::abs(u[i] - tu[i]));
        sol.fp_residual = r;
    } else {
        sol.status = SolveStatus::MaxIterExceeded;
        sol.fp_residual = sol.residual_history.back();
    }
    sol.bc_residuals = boundary_residuals(u, spec.gamma, spec.h, spec.lambda, spec.mu);
    return sol;
}

LowerBoundReport lower_bound_check(const GridFunction& u, double delta,
                                   const Order& alpha, const Order& beta, double q) {
    LowerBoundReport rep;
    rep.c_delta = c_delta(alpha, beta, q, delta).value;
    rep.sup_norm = u.sup_norm();
    double min_slack = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= u.intervals(); ++i) {
        if (u.node(i) + 1e-15 < delta) continue;
        min_slack = std::min(min_slack, u[i] - rep.c_delta * rep.sup_norm);
    }
    rep.min_slack = min_slack;
    rep.pass = min_slack >= -1e-9;
    return rep;
}

}  // namespace fracbvp
