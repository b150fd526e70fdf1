#include "fracbvp/green.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>

namespace fracbvp {

namespace {

void check_beta(const Order& beta) {
    if (!(beta.value > 3.0 && beta.value <= 4.0))
        throw std::domain_error("green: beta must lie in (3, 4]");
}

struct QuadOutcome {
    double value;
    bool converged;
};

// Tanh-sinh levels grade the nodes toward both endpoints, so integrable
// endpoint singularities of the weight converge under level refinement.
QuadOutcome integrate_graded(const std::function<double(double)>& f, double lo,
                             double hi) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    try {
        double err = 0.0, l1 = 0.0;
        std::size_t levels = 0;
        const double v = integrator.integrate(f, lo, hi, 1e-11, &err, &l1, &levels);
        const bool ok = std::isfinite(v) && err <= 1e-8 * (1.0 + std::abs(v));
        return {v, ok};
    } catch (const std::exception&) {
        return {std::numeric_limits<double>::quiet_NaN(), false};
    }
}

}  // namespace

namespace detail {

double moment_one_minus(double lo, double hi, double e, double a, double b) {
    // v = 1 - tau, a + b tau = (a + b) - b v
    const double v0 = 1.0 - lo, v1 = 1.0 - hi;
    const double i0 = (std::pow(v0, e + 1.0) - std::pow(v1, e + 1.0)) / (e + 1.0);
    const double i1 = (std::pow(v0, e + 2.0) - std::pow(v1, e + 2.0)) / (e + 2.0);
    return (a + b) * i0 - b * i1;
}

double moment_s_minus(double s, double lo, double hi, double e, double a, double b) {
    // u = s - tau, a + b tau = (a + b s) - b u
    const double u0 = s - lo, u1 = s - hi;
    const double i0 = (std::pow(u0, e + 1.0) - std::pow(u1, e + 1.0)) / (e + 1.0);
    const double i1 = (std::pow(u0, e + 2.0) - std::pow(u1, e + 2.0)) / (e + 2.0);
    return (a + b * s) * i0 - b * i1;
}

}  // namespace detail

double green_eval(double t, double s, const Order& beta) {
    check_beta(beta);
    if (t < 0.0 || t > 1.0 || s < 0.0 || s > 1.0)
        throw std::domain_error("green_eval: t and s must lie in [0,1]");
    const double b = beta.value;
    const double g = gamma_fn(b);
    const double base = t * (b - 1.0) * std::pow(1.0 - s, b - 2.0);
    if (s <= t) return (base - std::pow(t - s, b - 1.0)) / g;
    return base / g;
}

double green_inner_integral(double s, const GridFunction& w, const Order& beta) {
    check_beta(beta);
    if (s < 0.0 || s > 1.0)
        throw std::domain_error("green_inner_integral: s must lie in [0,1]");
    const double b = beta.value;
    const int N = w.intervals();
    const double h = w.spacing();
    double term1 = 0.0, term2 = 0.0;
    for (int j = 0; j < N; ++j) {
        const double lo = j * h;
        const double hi = (j + 1) * h;
        const double slope = (w[j + 1] - w[j]) / h;
        const double a0 = w[j] - slope * lo;
        term1 += detail::moment_one_minus(lo, hi, b - 2.0, a0, slope);
        if (hi <= s)
            term2 += detail::moment_s_minus(s, lo, hi, b - 1.0, a0, slope);
        else if (lo < s)
            term2 += detail::moment_s_minus(s, lo, s, b - 1.0, a0, slope);
    }
    return (s * (b - 1.0) * term1 - term2) / gamma_fn(b);
}

H1Result h1_integral(const std::function<double(double)>& a, const Order& beta) {
    check_beta(beta);
    const auto integrand = [&](double tau) { return green_eval(1.0, tau, beta) * a(tau); };
    const auto out = integrate_graded(integrand, 0.0, 1.0);
    H1Result r;
    r.value = out.value;
    r.converged = out.converged;
    r.satisfied = out.converged && std::isfinite(out.value) && out.value > 0.0;
    return r;
}

double green_weight_integral(const std::function<double(double)>& a, const Order& beta,
                             double lo, double hi) {
    check_beta(beta);
    if (!(lo >= 0.0 && lo < hi && hi <= 1.0))
        throw std::domain_error("green_weight_integral: need 0 <= lo < hi <= 1");
    const auto integrand = [&](double tau) { return green_eval(1.0, tau, beta) * a(tau); };
    const auto out = integrate_graded(integrand, lo, hi);
    if (!out.converged)
        throw std::runtime_error("green_weight_integral: quadrature did not converge");
    return out.value;
}

CDelta c_delta(const Order& alpha, const Order& beta, double q, double delta) {
    check_beta(beta);
    if (!(delta > 0.0 && delta < 1.0))
        throw std::domain_error("c_delta: delta must lie in (0,1)");
    if (!(q > 1.0)) throw std::invalid_argument("c_delta: q must be > 1");
    const double av = alpha.value;
    const double bv = beta.value;
    const auto integrand = [&](double s) {
        return av * std::pow(1.0 - s, av - 2.0) * phi(std::pow(s, bv - 1.0), q);
    };
    const auto out = integrate_graded(integrand, 0.0, delta);
    if (!out.converged)
        throw std::runtime_error("c_delta: quadrature did not converge");
    CDelta r;
    r.value = out.value;
    r.in_unit_interval = out.value > 0.0 && out.value < 1.0;
    return r;
}

}  // namespace fracbvp
