#include "fracbvp/polyid.hpp"

#include <cmath>
#include <stdexcept>

namespace fracbvp {

double to_double(const Rational& r) { return r.convert_to<double>(); }

BigInt factorial(int n) {
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt b = 1;
    for (int i = 0; i < k; ++i) {
        b *= n - i;
        b /= i + 1;
    }
    return b;
}

namespace {

std::vector<Rational> base_sequence(Family family, int m_max) {
    std::vector<Rational> c(static_cast<std::size_t>(m_max) + 1);
    switch (family) {
        case Family::Bernoulli:
            // sum_{k<=n} binom(n+1,k) B_k = 0 for n >= 1
            c[0] = 1;
            for (int n = 1; n <= m_max; ++n) {
                Rational s = 0;
                for (int k = 0; k < n; ++k)
                    s += Rational(binomial(n + 1, k)) * c[static_cast<std::size_t>(k)];
                c[static_cast<std::size_t>(n)] = -s / (n + 1);
            }
            break;
        case Family::Euler:
            // (e^z + 1) sum E_n z^n/n! = 2
            c[0] = 1;
            for (int n = 1; n <= m_max; ++n) {
                Rational s = 0;
                for (int k = 0; k < n; ++k)
                    s += Rational(binomial(n, k)) * c[static_cast<std::size_t>(k)];
                c[static_cast<std::size_t>(n)] = -s / 2;
            }
            break;
        case Family::Genocchi:
            // (e^z + 1) sum G_n z^n/n! = 2z, so G_0 = 0, G_1 = 1
            c[0] = 0;
            if (m_max >= 1) c[1] = 1;
            for (int n = 2; n <= m_max; ++n) {
                Rational s = 0;
                for (int k = 0; k < n; ++k)
                    s += Rational(binomial(n, k)) * c[static_cast<std::size_t>(k)];
                c[static_cast<std::size_t>(n)] = -s / 2;
            }
            break;
    }
    return c;
}

}  // namespace

std::vector<Rational> number_sequence(Family family, int order_l, int m_max) {
    if (order_l < 1) throw std::domain_error("number_sequence: order l must be >= 1");
    if (m_max < 0) throw std::domain_error("number_sequence: m_max must be >= 0");
    if (m_max > 200)
        throw std::runtime_error("number_sequence: m_max > 200 exceeds coefficient budget");
    const std::vector<Rational> base = base_sequence(family, m_max);
    std::vector<Rational> cur = base;
    for (int l = 2; l <= order_l; ++l) {
        std::vector<Rational> next(static_cast<std::size_t>(m_max) + 1);
        for (int m = 0; m <= m_max; ++m) {
            Rational s = 0;
            for (int j = 0; j <= m; ++j)
                s += Rational(binomial(m, j)) * cur[static_cast<std::size_t>(j)] *
                     base[static_cast<std::size_t>(m - j)];
            next[static_cast<std::size_t>(m)] = s;
        }
        cur = std::move(next);
    }
    return cur;
}

Rational higher_order_multinomial(Family family, int order_l, int m) {
    if (order_l < 1 || m < 0)
        throw std::domain_error("higher_order_multinomial: need l >= 1 and m >= 0");
    if (order_l > 6 || m > 20)
        throw std::runtime_error("higher_order_multinomial: enumeration budget is l <= 6, m <= 20");
    const std::vector<Rational> c = base_sequence(family, m);
    const BigInt m_fact = factorial(m);
    Rational total = 0;
    // compositions s_1 + ... + s_l = m
    std::vector<int> parts(static_cast<std::size_t>(order_l), 0);
    const auto recurse = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == order_l - 1) {
            parts[static_cast<std::size_t>(pos)] = remaining;
            BigInt denom = 1;
            Rational prod = 1;
            for (int s : parts) {
                denom *= factorial(s);
                prod *= c[static_cast<std::size_t>(s)];
            }
            total += Rational(m_fact, denom) * prod;
            return;
        }
        for (int s = 0; s <= remaining; ++s) {
            parts[static_cast<std::size_t>(pos)] = s;
            self(self, pos + 1, remaining - s);
        }
    };
    recurse(recurse, 0, m);
    return total;
}

int PolyRational::degree() const {
    for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k)
        if (coeffs[static_cast<std::size_t>(k)] != 0) return k;
    return -1;
}

Rational PolyRational::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs.size())) return 0;
    return coeffs[static_cast<std::size_t>(k)];
}

PolyRational family_polynomial(Family family, int m) {
    return family_polynomial(family, 1, m);
}

PolyRational family_polynomial(Family family, int order_l, int m) {
    const std::vector<Rational> numbers = number_sequence(family, order_l, m);
    PolyRational poly;
    poly.coeffs.assign(static_cast<std::size_t>(m) + 1, Rational(0));
    for (int k = 0; k <= m; ++k)
        poly.coeffs[static_cast<std::size_t>(m - k)] =
            Rational(binomial(m, k)) * numbers[static_cast<std::size_t>(k)];
    return poly;
}

PolyRational derivative(const PolyRational& poly, int n) {
    if (n < 0) throw std::domain_error("derivative: n must be >= 0");
    PolyRational out = poly;
    for (int pass = 0; pass < n; ++pass) {
        const int deg = static_cast<int>(out.coeffs.size()) - 1;
        std::vector<Rational> next(static_cast<std::size_t>(std::max(deg, 1)), Rational(0));
        for (int k = 1; k <= deg; ++k)
            next[static_cast<std::size_t>(k - 1)] =
                out.coeffs[static_cast<std::size_t>(k)] * k;
        out.coeffs = std::move(next);
    }
    return out;
}

FracPoly caputo_closed_form(Family family, int order_l, int m, const Order& alpha) {
    if (m < 0) throw std::domain_error("caputo_closed_form: m must be >= 0");
    const int n = alpha.n;
    FracPoly out;
    if (m < n) return out;  // degree below the order: annihilated
    const std::vector<Rational> numbers = number_sequence(family, order_l, m - n);
    const BigInt lead = factorial(m) / factorial(m - n);  // Gamma(m+1)/Gamma(m-n+1)
    for (int k = 0; k <= m - n; ++k) {
        const Rational exact = Rational(lead * factorial(k) * binomial(m - n, k)) *
                               numbers[static_cast<std::size_t>(m - n - k)];
        if (exact == 0) continue;
        const double coeff =
            to_double(exact) / std::tgamma(n + k - alpha.value + 1.0);
        out.add_term(coeff, k - alpha.value + n);
    }
    return out;
}

FracPoly power_rule_oracle(const PolyRational& poly, const Order& alpha) {
    FracPoly out;
    for (int j = 0; j < static_cast<int>(poly.coeffs.size()); ++j) {
        const Rational& cj = poly.coeffs[static_cast<std::size_t>(j)];
        if (cj == 0) continue;
        const FracMonomial image = caputo_power(static_cast<double>(j), alpha);
        if (image.coeff == 0.0) continue;
        out.add_term(to_double(cj) * image.coeff, image.exponent);
    }
    return out;
}

double frac_poly_eval(const FracPoly& fp, double t) { return fp.eval(t); }

}  // namespace fracbvp
