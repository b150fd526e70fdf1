#include "fracbvp/regime.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>

namespace fracbvp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> log_space(double lo, double hi, int count) {
    std::vector<double> xs(static_cast<std::size_t>(count));
    const double llo = std::log10(lo), lhi = std::log10(hi);
    for (int i = 0; i < count; ++i)
        xs[static_cast<std::size_t>(i)] =
            std::pow(10.0, llo + (lhi - llo) * i / (count - 1));
    return xs;
}

// ratio f(x)/phi_p(x); x > 0
double ratio(const std::function<double(double)>& f, const PExponent& pq, double x) {
    return f(x) / phi(x, pq.p);
}

LimitEstimate classify_trend(const std::vector<double>& r) {
    // r ordered by approach to the limit
    const std::size_t n = r.size();
    LimitEstimate est;
    for (double v : r)
        if (!std::isfinite(v)) return est;
    const double r1 = r[n - 3], r2 = r[n - 2], r3 = r[n - 1];
    const double scale = std::abs(r3);
    if (scale == 0.0 && std::abs(r2) == 0.0 && std::abs(r1) == 0.0) {
        est.cls = LimitClass::Zero;
        return est;
    }
    if (std::abs(r1 - r3) <= 0.01 * scale && std::abs(r2 - r3) <= 0.01 * scale) {
        est.cls = LimitClass::Finite;
        est.value = (r1 + r2 + r3) / 3.0;
        return est;
    }
    bool decreasing = true, increasing = true;
    for (std::size_t i = n - 4; i + 1 < n; ++i) {
        decreasing = decreasing && r[i + 1] < r[i];
        increasing = increasing && r[i + 1] > r[i];
    }
    if (decreasing) est.cls = LimitClass::Zero;
    else if (increasing) est.cls = LimitClass::Infinite;
    return est;
}

// shared prefactor (1 + gamma(h^alpha - 1)) / (Gamma(alpha+1)(1-gamma)) of the
// L and M caps
double witness_prefactor(const Order& alpha, double gamma, double h) {
    return (1.0 + gamma * (std::pow(h, alpha.value) - 1.0)) /
           (gamma_fn(alpha.value + 1.0) * (1.0 - gamma));
}

}  // namespace

double Range::at(int i) const {
    if (count <= 1) return start;
    return start + (stop - start) * i / (count - 1);
}

std::pair<LimitEstimate, LimitEstimate> estimate_limits(
    const std::function<double(double)>& f, const PExponent& pq) {
    std::vector<double> toward_zero, toward_inf;
    for (int k = 1; k <= 8; ++k) {
        toward_zero.push_back(ratio(f, pq, std::pow(10.0, -k)));
        toward_inf.push_back(ratio(f, pq, std::pow(10.0, k)));
    }
    return {classify_trend(toward_zero), classify_trend(toward_inf)};
}

std::optional<H2Witness> check_H2(const std::function<double(double)>& f,
                                  const PExponent& pq, const Order& alpha, double gamma,
                                  double h, double h1_value) {
    if (!(h1_value > 0.0)) return std::nullopt;
    const double l_max = 1.0 / (phi(witness_prefactor(alpha, gamma, h), pq.p) * h1_value);
    const auto sigma_on = [&](double c, int points) {
        double s = 0.0;
        for (double x : log_space(c * 1e-9, c, points))
            s = std::max(s, ratio(f, pq, x) / l_max);
        return s;
    };
    // pick c maximizing the certified band (1 - phi_q(sigma)) c
    double best_c = 0.0, best_sigma = 0.0, best_score = -1.0;
    for (double c : log_space(1e-6, 1e3, 91)) {
        const double s = sigma_on(c, 200);
        if (!(s >= 0.0) || s >= 1.0) continue;
        const double score = (1.0 - phi(s, pq.q)) * c;
        if (score > best_score) {
            best_score = score;
            best_c = c;
            best_sigma = s;
        }
    }
    if (best_score < 0.0) return std::nullopt;
    // witnesses are numerical evidence: re-verify on a 10x denser sample
    const double dense = sigma_on(best_c, 2000);
    const double sigma = std::max(best_sigma, dense);
    if (!(sigma < 1.0)) return std::nullopt;
    return H2Witness{sigma, best_c, l_max, l_max};
}

std::optional<H3Witness> check_H3(const std::function<double(double)>& f,
                                  const PExponent& pq, const Order& alpha, double gamma,
                                  double h, double h1_value) {
    if (!(h1_value > 0.0)) return std::nullopt;
    const double m_max =
        1.0 /
        (phi(witness_prefactor(alpha, gamma, h) * std::pow(2.0, pq.q - 1.0), pq.p) *
         h1_value);
    const auto sup_beyond = [&](double d, int points) {
        double s = 0.0;
        for (double x : log_space(d, 1e10, points)) s = std::max(s, ratio(f, pq, x));
        return s;
    };
    for (double d : log_space(1e-6, 1e6, 121)) {
        const double s = sup_beyond(d, 300);
        if (!(s >= 0.0) || s >= m_max) continue;
        const double dense = sup_beyond(d, 3000);
        if (!(dense < m_max)) continue;
        const double m = dense > 0.0 ? dense : 0.5 * m_max;
        return H3Witness{m, d, m_max};
    }
    return std::nullopt;
}

std::optional<H4Witness> check_H4(const std::function<double(double)>& f,
                                  const PExponent& pq, const Order& alpha,
                                  const Order& beta, double delta,
                                  const std::function<double(double)>& a) {
    const double cd = c_delta(alpha, beta, pq.q, delta).value;
    // integral_0^1 (1-s)^(alpha-2)/Gamma(alpha) phi_q(s^(beta-1)) ds
    boost::math::quadrature::tanh_sinh<double> integrator;
    const double av = alpha.value, bv = beta.value;
    const double j_int = integrator.integrate(
        [&](double s) {
            return std::pow(1.0 - s, av - 2.0) / gamma_fn(av) *
                   phi(std::pow(s, bv - 1.0), pq.q);
        },
        0.0, 1.0, 1e-11);
    double tail = 0.0;
    try {
        tail = green_weight_integral(a, beta, delta, 1.0);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    if (!(tail > 0.0)) return std::nullopt;
    const double n_min = 1.0 / (phi(cd * j_int, pq.p) * tail);
    const auto inf_beyond = [&](double e, int points) {
        double s = std::numeric_limits<double>::infinity();
        for (double x : log_space(e, 1e10, points)) s = std::min(s, ratio(f, pq, x));
        return s;
    };
    for (double e : log_space(1e-6, 1e8, 141)) {
        const double s = inf_beyond(e, 300);
        if (!(s > n_min)) continue;
        const double dense = inf_beyond(e, 3000);
        if (!(dense > n_min)) continue;
        return H4Witness{dense, e, n_min, delta};
    }
    return std::nullopt;
}

std::pair<bool, std::optional<double>> check_H5_H6(const std::function<double(double)>& f,
                                                   const PExponent& pq) {
    // (H5): consecutive ordered samples, 10^4 pairs
    bool h5 = true;
    double prev = f(0.0);
    for (int k = 1; k <= 10000 && h5; ++k) {
        const double x = std::pow(10.0, -6.0 + 9.0 * k / 10000.0);
        const double v = f(x);
        if (v < prev - 1e-12 * (1.0 + std::abs(prev))) h5 = false;
        prev = v;
    }
    // (H6): theta_hat = sup ln(f(x)/f(kx)) / ((p-1) ln(1/k))
    const auto theta_hat = [&](int nk, int nx) {
        double t = 0.0;
        bool any = false;
        for (double k : log_space(1e-3, 0.999, nk)) {
            const double denom = (pq.p - 1.0) * std::log(1.0 / k);
            for (double x : log_space(1e-3, 1e3, nx)) {
                const double fx = f(x), fkx = f(k * x);
                if (!(fx > 0.0) || !(fkx > 0.0)) continue;  // theta undefined, skip
                t = std::max(t, std::log(fx / fkx) / denom);
                any = true;
            }
        }
        return any ? t : 0.0;
    };
    double t = theta_hat(100, 100);
    if (t < 1.0) t = std::max(t, theta_hat(316, 316));
    if (t < 1.0) return {h5, t};
    return {h5, std::nullopt};
}

HypothesisReport check_hypotheses(const ProblemSpec& spec, double delta) {
    HypothesisReport rep;
    const H1Result h1 = h1_integral(spec.a, spec.beta);
    rep.h1 = h1.satisfied;
    rep.h1_value = h1.value;
    rep.h1_converged = h1.converged;
    if (rep.h1) {
        rep.h2 = check_H2(spec.f, spec.pq, spec.alpha, spec.gamma, spec.h, h1.value);
        rep.h3 = check_H3(spec.f, spec.pq, spec.alpha, spec.gamma, spec.h, h1.value);
        rep.h4 = check_H4(spec.f, spec.pq, spec.alpha, spec.beta, delta, spec.a);
    }
    const auto [h5, theta] = check_H5_H6(spec.f, spec.pq);
    rep.h5 = h5;
    rep.theta = theta;
    const auto [f0, finf] = estimate_limits(spec.f, spec.pq);
    rep.f0 = f0;
    rep.finf = finf;
    return rep;
}

RegimeVerdict classify(const ProblemSpec& spec, const HypothesisReport& report) {
    RegimeVerdict v;
    v.lambda = spec.lambda;
    v.mu = spec.mu;
    v.lambda_gamma_mu_h = spec.lambda + spec.gamma * spec.mu * spec.h;
    v.lambda_gamma_mu = spec.lambda + spec.gamma * spec.mu;
    v.exist_bound = report.h2
                        ? (1.0 - spec.gamma) * (1.0 - phi(report.h2->sigma, spec.pq.q)) *
                              report.h2->c
                        : kNaN;
    v.nonexist_bound = report.h4 ? (1.0 - spec.gamma) * report.h4->e : kNaN;
    if (report.h1 && report.h4 && v.lambda_gamma_mu_h > v.nonexist_bound) {
        v.verdict = Verdict::NoSolution;
        // (H3) promises a solution for every lambda; never resolve silently
        v.consistency_warning = report.h3.has_value();
    } else if (report.h1 && report.h5 && report.theta) {
        v.verdict = Verdict::Unique;
    } else if (report.h1 && report.h3) {
        v.verdict = Verdict::ExistsAllLambda;
    } else if (report.h1 && report.h2 && v.lambda_gamma_mu_h <= v.exist_bound) {
        v.verdict = Verdict::ExistsSmallParam;
    } else {
        v.verdict = Verdict::Indeterminate;
    }
    return v;
}

std::vector<SweepCell> sweep(const ProblemSpec& base, double delta, const Range& lambdas,
                             const Range& mus, bool run_solver,
                             const SolverOptions& opts) {
    if (lambdas.count < 1 || mus.count < 1)
        throw std::invalid_argument("sweep: ranges need count >= 1");
    // hypothesis witnesses do not depend on (lambda, mu)
    const HypothesisReport report = check_hypotheses(base, delta);
    const int total = lambdas.count * mus.count;
    std::vector<SweepCell> cells(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(dynamic)
    for (int idx = 0; idx < total; ++idx) {
        const int i = idx / mus.count;
        const int j = idx % mus.count;
        ProblemSpec spec = base;
        spec.lambda = lambdas.at(i);
        spec.mu = mus.at(j);
        SweepCell cell;
        cell.lambda = spec.lambda;
        cell.mu = spec.mu;
        cell.verdict = classify(spec, report);
        if (run_solver) {
            const Solution sol = solve_fixed_point(spec, opts);
            cell.solve = SolveSummary{sol.status, sol.fp_residual, sol.iterations};
        }
        cells[static_cast<std::size_t>(idx)] = std::move(cell);
    }
    return cells;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::ExistsSmallParam: return "ExistsSmallParam";
        case Verdict::ExistsAllLambda: return "ExistsAllLambda";
        case Verdict::Unique: return "Unique";
        case Verdict::NoSolution: return "NoSolution";
        default: return "Indeterminate";
    }
}

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Converged: return "Converged";
        case SolveStatus::MaxIterExceeded: return "MaxIterExceeded";
        default: return "Diverged";
    }
}

const char* to_string(LimitClass c) {
    switch (c) {
        case LimitClass::Zero: return "zero";
        case LimitClass::Finite: return "finite";
        case LimitClass::Infinite: return "infinite";
        default: return "indeterminate";
    }
}

}  // namespace fracbvp
