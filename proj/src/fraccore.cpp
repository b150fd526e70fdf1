#include "fracbvp/fraccore.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fracbvp {

Order::Order(double v) : value(v), n(0) {
    if (!std::isfinite(v) || v <= 0.0 || v > 4.0)
        throw std::domain_error("Order: value must lie in (0, 4]");
    n = static_cast<int>(std::ceil(v));
}

PExponent::PExponent(double p_value) : p(p_value), q(0.0) {
    if (!std::isfinite(p_value) || p_value <= 1.0)
        throw std::invalid_argument("PExponent: p must be > 1");
    q = p_value / (p_value - 1.0);
}

GridFunction::GridFunction(int intervals, double fill) : intervals_(intervals) {
    if (intervals < 2)
        throw std::invalid_argument("GridFunction: need at least 2 intervals");
    values_.assign(static_cast<std::size_t>(intervals_) + 1, fill);
}

GridFunction GridFunction::sample(int intervals, const std::function<double(double)>& fn) {
    GridFunction g(intervals);
    for (int i = 0; i <= intervals; ++i) g[i] = fn(g.node(i));
    return g;
}

double GridFunction::sup_norm() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

bool GridFunction::all_finite() const {
    return std::all_of(values_.begin(), values_.end(),
                       [](double v) { return std::isfinite(v); });
}

double GridFunction::interp(double t) const {
    if (t < 0.0 || t > 1.0)
        throw std::domain_error("GridFunction::interp: t outside [0,1]");
    const double x = t * intervals_;
    const int j = std::min(static_cast<int>(x), intervals_ - 1);
    const double w = x - j;
    return values_[static_cast<std::size_t>(j)] * (1.0 - w) +
           values_[static_cast<std::size_t>(j) + 1] * w;
}

void FracPoly::add_term(double coeff, double exponent) {
    if (exponent < 0.0)
        throw std::domain_error("FracPoly: exponents must be >= 0");
    if (coeff == 0.0) return;
    auto it = std::lower_bound(terms.begin(), terms.end(), exponent,
                               [](const FracMonomial& m, double e) { return m.exponent < e; });
    if (it != terms.end() && it->exponent == exponent) {
        it->coeff += coeff;
        if (it->coeff == 0.0) terms.erase(it);
    } else {
        terms.insert(it, FracMonomial{coeff, exponent});
    }
}

double FracPoly::eval(double t) const {
    if (t < 0.0) throw std::domain_error("FracPoly::eval: t must be >= 0");
    double s = 0.0;
    for (const auto& m : terms) s += m.coeff * std::pow(t, m.exponent);
    return s;
}

double phi(double s, double p) {
    if (!std::isfinite(s)) throw std::invalid_argument("phi: s must be finite");
    if (!(p > 1.0)) throw std::invalid_argument("phi: p must be > 1");
    if (s == 0.0) return 0.0;
    return std::pow(std::abs(s), p - 2.0) * s;
}

double phi_inverse(double s, const PExponent& pq) { return phi(s, pq.q); }

double gamma_fn(double x) {
    if (!(x > 0.0) || x >= 171.0)
        throw std::domain_error("gamma_fn: x must lie in (0, 171)");
    return std::tgamma(x);
}

namespace detail {

std::vector<double> pt_grid(const std::vector<double>& y, double alpha, double h,
                            bool parallel) {
    const int nodes = static_cast<int>(y.size());
    const int N = nodes - 1;
    // dA[m] = (m^a - (m-1)^a)/a, E[m] = m*dA[m] - (m^(a+1) - (m-1)^(a+1))/(a+1);
    // the cell [t_j, t_{j+1}] seen from target t_n contributes
    //   h^a * (y_j * dA[n-j] + (y_{j+1}-y_j) * E[n-j]) / Gamma(a).
    std::vector<double> dA(static_cast<std::size_t>(nodes));
    std::vector<double> E(static_cast<std::size_t>(nodes));
    double a_prev = 0.0, b_prev = 0.0;
    for (int k = 1; k <= N; ++k) {
        const double a_cur = std::pow(static_cast<double>(k), alpha);
        const double b_cur = std::pow(static_cast<double>(k), alpha + 1.0);
        dA[static_cast<std::size_t>(k)] = (a_cur - a_prev) / alpha;
        E[static_cast<std::size_t>(k)] =
            k * dA[static_cast<std::size_t>(k)] - (b_cur - b_prev) / (alpha + 1.0);
        a_prev = a_cur;
        b_prev = b_cur;
    }
    const double scale = std::pow(h, alpha) / std::tgamma(alpha);
    std::vector<double> out(static_cast<std::size_t>(nodes), 0.0);
#pragma omp parallel for schedule(static, 32) if (parallel)
    for (int n = 1; n <= N; ++n) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
            const std::size_t m = static_cast<std::size_t>(n - j);
            const std::size_t sj = static_cast<std::size_t>(j);
            acc += y[sj] * dA[m] + (y[sj + 1] - y[sj]) * E[m];
        }
        out[static_cast<std::size_t>(n)] = scale * acc;
    }
    return out;
}

double pt_at(const std::vector<double>& y, double alpha, double h, double t) {
    if (t <= 0.0) return 0.0;
    const int N = static_cast<int>(y.size()) - 1;
    const double x = t / h;
    const int jt = std::min(static_cast<int>(x), N - 1);
    double acc = 0.0;
    for (int j = 0; j < jt; ++j) {
        const std::size_t sj = static_cast<std::size_t>(j);
        const double slope = (y[sj + 1] - y[sj]) / h;
        const double u0 = t - j * h, u1 = t - (j + 1) * h;
        const double i0 = (std::pow(u0, alpha) - std::pow(u1, alpha)) / alpha;
        const double i1 =
            (std::pow(u0, alpha + 1.0) - std::pow(u1, alpha + 1.0)) / (alpha + 1.0);
        acc += (y[sj] + slope * u0) * i0 - slope * i1;
    }
    const double u0 = t - jt * h;
    if (u0 > 0.0) {
        const std::size_t sj = static_cast<std::size_t>(jt);
        const double slope = (y[sj + 1] - y[sj]) / h;
        acc += (y[sj] + slope * u0) * std::pow(u0, alpha) / alpha -
               slope * std::pow(u0, alpha + 1.0) / (alpha + 1.0);
    }
    return acc / std::tgamma(alpha);
}

// Start correction: collocate y at the first four nodes in the basis
// {1, xi, xi^s, xi^(1+s)} with xi = t/h and s = n - alpha, subtract the fit,
// integrate the remainder with the product-trapezoid rule and add the exact
// fractional integral of the fit back. Exact on Caputo images of t^2, t^3.
struct StartFit {
    bool active = false;
    double sigma = 0.0;
    double coef[4] = {0.0, 0.0, 0.0, 0.0};
};

bool solve4(double m[4][4], double rhs[4], double out[4]) {
    int perm[4] = {0, 1, 2, 3};
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(m[perm[r]][col]) > std::abs(m[perm[piv]][col])) piv = r;
        std::swap(perm[col], perm[piv]);
        const double d = m[perm[col]][col];
        if (std::abs(d) < 1e-12) return false;
        for (int r = col + 1; r < 4; ++r) {
            const double f = m[perm[r]][col] / d;
            for (int c = col; c < 4; ++c) m[perm[r]][c] -= f * m[perm[col]][c];
            rhs[perm[r]] -= f * rhs[perm[col]];
        }
    }
    for (int col = 3; col >= 0; --col) {
        double s = rhs[perm[col]];
        for (int c = col + 1; c < 4; ++c) s -= m[perm[col]][c] * out[c];
        out[col] = s / m[perm[col]][col];
    }
    return true;
}

StartFit fit_singular_start(const std::vector<double>& y, const Order& alpha) {
    StartFit fit;
    const double sigma = alpha.n - alpha.value;
    if (y.size() < 5 || sigma < 0.05 || sigma > 0.95) return fit;
    double m[4][4];
    double rhs[4];
    for (int i = 0; i < 4; ++i) {
        const double xi = i;
        m[i][0] = 1.0;
        m[i][1] = xi;
        m[i][2] = (i == 0) ? 0.0 : std::pow(xi, sigma);
        m[i][3] = (i == 0) ? 0.0 : std::pow(xi, 1.0 + sigma);
        rhs[i] = y[static_cast<std::size_t>(i)];
    }
    if (!solve4(m, rhs, fit.coef)) return fit;
    fit.sigma = sigma;
    fit.active = true;
    return fit;
}

double fit_value(const StartFit& fit, double xi) {
    const double pow_s = (xi == 0.0) ? 0.0 : std::pow(xi, fit.sigma);
    return fit.coef[0] + fit.coef[1] * xi + fit.coef[2] * pow_s +
           fit.coef[3] * pow_s * xi;
}

// Exact I^alpha of the fit: power rule per basis term.
double fit_exact_integral(const StartFit& fit, double alpha, double h, double t) {
    if (t <= 0.0) return 0.0;
    const double s = fit.sigma;
    double acc = fit.coef[0] * std::pow(t, alpha) / std::tgamma(alpha + 1.0);
    acc += fit.coef[1] / h * std::pow(t, alpha + 1.0) / std::tgamma(alpha + 2.0);
    acc += fit.coef[2] / std::pow(h, s) * std::tgamma(s + 1.0) /
           std::tgamma(s + alpha + 1.0) * std::pow(t, s + alpha);
    acc += fit.coef[3] / std::pow(h, s + 1.0) * std::tgamma(s + 2.0) /
           std::tgamma(s + alpha + 2.0) * std::pow(t, s + alpha + 1.0);
    return acc;
}

}  // namespace detail

namespace {

GridFunction rl_integral_impl(const GridFunction& y, const Order& alpha, bool parallel) {
    if (!y.all_finite())
        throw std::invalid_argument("rl_integral: y must be finite");
    const int N = y.intervals();
    const double h = y.spacing();
    GridFunction out(N);
    const auto fit = detail::fit_singular_start(y.values(), alpha);
    if (!fit.active) {
        out.values() = detail::pt_grid(y.values(), alpha.value, h, parallel);
        return out;
    }
    std::vector<double> r(y.values());
    for (int j = 0; j <= N; ++j)
        r[static_cast<std::size_t>(j)] -= detail::fit_value(fit, j);
    out.values() = detail::pt_grid(r, alpha.value, h, parallel);
    for (int i = 1; i <= N; ++i)
        out[i] += detail::fit_exact_integral(fit, alpha.value, h, y.node(i));
    return out;
}

}  // namespace

GridFunction rl_integral(const GridFunction& y, const Order& alpha) {
    return rl_integral_impl(y, alpha, true);
}

GridFunction rl_integral_serial(const GridFunction& y, const Order& alpha) {
    return rl_integral_impl(y, alpha, false);
}

double rl_integral_at(const GridFunction& y, const Order& alpha, double t) {
    if (t < 0.0 || t > 1.0)
        throw std::domain_error("rl_integral_at: t outside [0,1]");
    if (!y.all_finite())
        throw std::invalid_argument("rl_integral_at: y must be finite");
    const double h = y.spacing();
    const auto fit = detail::fit_singular_start(y.values(), alpha);
    if (!fit.active) return detail::pt_at(y.values(), alpha.value, h, t);
    std::vector<double> r(y.values());
    for (int j = 0; j <= y.intervals(); ++j)
        r[static_cast<std::size_t>(j)] -= detail::fit_value(fit, j);
    return detail::pt_at(r, alpha.value, h, t) +
           detail::fit_exact_integral(fit, alpha.value, h, t);
}

FracMonomial caputo_power(double mu, const Order& alpha) {
    if (!(mu >= 0.0)) throw std::domain_error("caputo_power: mu must be >= 0");
    const int n = alpha.n;
    const double rounded = std::round(mu);
    if (std::abs(mu - rounded) <= 1e-12 * std::max(1.0, mu) && rounded <= n - 1)
        return FracMonomial{0.0, 0.0};
    double falling = 1.0;
    for (int i = 0; i < n; ++i) falling *= mu - i;
    const double coeff =
        falling * std::tgamma(1.0 + mu - n) / std::tgamma(1.0 + mu - alpha.value);
    return FracMonomial{coeff, mu - alpha.value};
}

GridFunction caputo_grid(const GridFunction& y, const Order& alpha) {
    const int N = y.intervals();
    if (N < 64)
        throw std::invalid_argument("caputo_grid: grid too coarse, need N >= 64");
    if (!y.all_finite())
        throw std::invalid_argument("caputo_grid: y must be finite");
    const int n = alpha.n;
    const double h = y.spacing();
    GridFunction d(N);
    // centered n-th differences inside, pure forward/backward at the ends
    const auto forward = [&](int i) {
        double acc = 0.0;
        for (int k = 0; k <= n; ++k) {
            double c = 1.0;
            for (int j = 0; j < k; ++j) c = c * (n - j) / (j + 1);
            acc += ((n - k) % 2 == 0 ? c : -c) * y[i + k];
        }
        return acc / std::pow(h, n);
    };
    const auto backward = [&](int i) {
        double acc = 0.0;
        for (int k = 0; k <= n; ++k) {
            double c = 1.0;
            for (int j = 0; j < k; ++j) c = c * (n - j) / (j + 1);
            acc += (k % 2 == 0 ? c : -c) * y[i - k];
        }
        return acc / std::pow(h, n);
    };
    const int lo = (n <= 2) ? 1 : 2;
    const int hi = N - lo;
    for (int i = 0; i <= N; ++i) {
        if (i < lo) {
            d[i] = forward(i);
        } else if (i > hi) {
            d[i] = backward(i);
        } else {
            switch (n) {
                case 1: d[i] = (y[i + 1] - y[i - 1]) / (2.0 * h); break;
                case 2: d[i] = (y[i + 1] - 2.0 * y[i] + y[i - 1]) / (h * h); break;
                case 3:
                    d[i] = (y[i + 2] - 2.0 * y[i + 1] + 2.0 * y[i - 1] - y[i - 2]) /
                           (2.0 * h * h * h);
                    break;
                default:
                    d[i] = (y[i + 2] - 4.0 * y[i + 1] + 6.0 * y[i] - 4.0 * y[i - 1] +
                            y[i - 2]) /
                           (h * h * h * h);
                    break;
            }
        }
    }
    const double tail = n - alpha.value;
    if (tail < 1e-12) return d;  // integer order: I^0 is the identity
    return rl_integral(d, Order(tail));
}

}  // namespace fracbvp
