#pragma once

#include <functional>

#include "fracbvp/fraccore.hpp"

namespace fracbvp {

// Kernel H(t,s) of the beta-order sub-problem, beta in (3,4]:
//   s <= t:  [t(b-1)(1-s)^(b-2) - (t-s)^(b-1)] / Gamma(b)
//   t <= s:  t(b-1)(1-s)^(b-2) / Gamma(b)
double green_eval(double t, double s, const Order& beta);

// integral_0^1 H(s,tau) w(tau) dtau against the piecewise-linear interpolant
// of w; kernel moments exact per cell, the cell containing tau = s is split
// at the kink.
double green_inner_integral(double s, const GridFunction& w, const Order& beta);

struct H1Result {
    double value = 0.0;
    bool satisfied = false;  // 0 < value < +inf
    bool converged = false;
};

// integral_0^1 H(1,tau) a(tau) dtau for a weight a that may carry integrable
// endpoint singularities.
H1Result h1_integral(const std::function<double(double)>& a, const Order& beta);

// integral_lo^hi H(1,tau) a(tau) dtau
double green_weight_integral(const std::function<double(double)>& a, const Order& beta,
                             double lo, double hi);

struct CDelta {
    double value = 0.0;
    bool in_unit_interval = false;  // reported, not trusted
};

// c_delta = integral_0^delta alpha (1-s)^(alpha-2) phi_q(s^(beta-1)) ds
CDelta c_delta(const Order& alpha, const Order& beta, double q, double delta);

namespace detail {

// integral over [lo,hi] of (1-tau)^e (a + b tau) dtau
double moment_one_minus(double lo, double hi, double e, double a, double b);
// integral over [lo,hi] of (s-tau)^e (a + b tau) dtau, hi <= s
double moment_s_minus(double s, double lo, double hi, double e, double a, double b);

}  // namespace detail

}  // namespace fracbvp
