#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace fracbvp {

// Fractional order with n = smallest integer >= value.
struct Order {
    double value;
    int n;
    explicit Order(double v);
};

// p-Laplacian exponent pair, 1/p + 1/q = 1.
struct PExponent {
    double p;
    double q;
    explicit PExponent(double p_value);
};

// Real-valued function sampled on the uniform mesh t_i = i/N of [0,1],
// N = number of intervals, N+1 stored values.
class GridFunction {
public:
    explicit GridFunction(int intervals, double fill = 0.0);
    static GridFunction sample(int intervals, const std::function<double(double)>& fn);

    int intervals() const { return intervals_; }
    int size() const { return intervals_ + 1; }
    double spacing() const { return 1.0 / intervals_; }
    double node(int i) const { return static_cast<double>(i) / intervals_; }

    double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return values_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    double sup_norm() const;
    bool all_finite() const;
    // piecewise-linear evaluation at arbitrary t in [0,1]
    double interp(double t) const;

private:
    int intervals_;
    std::vector<double> values_;
};

// One monomial c * t^e with real exponent.
struct FracMonomial {
    double coeff = 0.0;
    double exponent = 0.0;
};

// Finite sum of monomials, exponents >= 0, sorted ascending, no duplicates.
// The zero polynomial is the empty term list.
struct FracPoly {
    std::vector<FracMonomial> terms;

    void add_term(double coeff, double exponent);
    double eval(double t) const;
    bool is_zero() const { return terms.empty(); }
};

// phi_p(s) = |s|^(p-2) s. Inverse is phi with the conjugate exponent.
double phi(double s, double p);
double phi_inverse(double s, const PExponent& pq);

// Gamma on (0, 171); relative accuracy 1e-13 against reference values.
double gamma_fn(double x);

// Riemann-Liouville integral I^a y at every grid node. Product-trapezoid
// rule (kernel moments exact against the piecewise-linear interpolant of y)
// plus a start correction that is exact on {1, s, s^(n-a), s^(n-a+1)}, the
// span of Caputo images of low-degree polynomials. output[0] = 0.
GridFunction rl_integral(const GridFunction& y, const Order& alpha);
GridFunction rl_integral_serial(const GridFunction& y, const Order& alpha);
// Same rule evaluated at one arbitrary point t in [0,1].
double rl_integral_at(const GridFunction& y, const Order& alpha, double t);

// Caputo image of t^mu; the zero monomial when mu is an integer < n.
FracMonomial caputo_power(double mu, const Order& alpha);

// Caputo derivative estimate on the grid: I^(n-alpha) applied to an n-th
// finite-difference derivative of y. Verification tool, O(h) on smooth y;
// never a solver dependency.
GridFunction caputo_grid(const GridFunction& y, const Order& alpha);

namespace detail {

// Product-trapezoid fractional integral of order `alpha` for node spacing h,
// evaluated at every node (out[0] = 0). Exact for piecewise-linear data.
std::vector<double> pt_grid(const std::vector<double>& y, double alpha, double h,
                            bool parallel);
// Same rule at one arbitrary point t (partial last cell handled exactly).
double pt_at(const std::vector<double>& y, double alpha, double h, double t);

}  // namespace detail

}  // namespace fracbvp
