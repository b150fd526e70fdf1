#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "fracbvp/fraccore.hpp"

namespace fracbvp {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class Family { Bernoulli, Euler, Genocchi };

// c_0..c_m of the family's exponential generating function:
//   Bernoulli  z/(e^z - 1),  Euler  2/(e^z + 1),  Genocchi  2z/(e^z + 1),
// raised to the l-th power for l > 1 (binomial convolution of coefficients).
std::vector<Rational> number_sequence(Family family, int order_l, int m_max);

// Independent oracle for the order-l numbers: direct enumeration of
//   sum over s_1+...+s_l = m of multinomial(m; s_1..s_l) prod_j c_{s_j}.
Rational higher_order_multinomial(Family family, int order_l, int m);

// Exact polynomial with rational coefficients, coeffs[k] multiplies t^k.
struct PolyRational {
    std::vector<Rational> coeffs;

    int degree() const;
    Rational coeff(int k) const;
};

// P_m(t) = sum_k binom(m,k) t^(m-k) c^(l)_k; order_l = 1 overload first
PolyRational family_polynomial(Family family, int m);
PolyRational family_polynomial(Family family, int order_l, int m);

// exact classical n-th derivative
PolyRational derivative(const PolyRational& poly, int n);

// Closed-form Caputo derivative of the order-l family polynomial: terms
//   [Gamma(m+1)/Gamma(m-n+1)] k! binom(m-n,k) c^(l)_{m-n-k} / Gamma(n+k-a+1)
// at exponents k - a + n; zero when m < n. Coefficients are assembled in
// exact rationals and divided by the Gamma factor only at the end.
FracPoly caputo_closed_form(Family family, int order_l, int m, const Order& alpha);

// Independent truth source: caputo_power applied termwise to an exact
// polynomial.
FracPoly power_rule_oracle(const PolyRational& poly, const Order& alpha);

double frac_poly_eval(const FracPoly& fp, double t);

double to_double(const Rational& r);
BigInt binomial(int n, int k);
BigInt factorial(int n);

}  // namespace fracbvp
