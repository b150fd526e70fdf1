#include "fracbvp/green.hpp"

#include <cmath>

#include "test_util.hpp"

using namespace fracbvp;

int main() {
    TestRunner test;
    const Order beta4(4.0);

    // --- green_eval spot values ---
    {
        test.expect_near(green_eval(1.0, 0.0, beta4), 1.0 / 3.0, 1e-15,
                         "green: H(1,0) at beta = 4");
        test.expect_near(green_eval(0.0, 0.3, beta4), 0.0, 0.0, "green: H(0,s) = 0");
        test.expect_near(green_eval(0.5, 0.5, beta4), 0.0625, 1e-15,
                         "green: H(0.5,0.5) at beta = 4");
        test.expect_throw([&] { green_eval(1.2, 0.0, beta4); },
                          "green: rejects t outside [0,1]");
        test.expect_throw([] { green_eval(0.5, 0.5, Order(2.5)); },
                          "green: rejects beta outside (3,4]");
    }

    // branch continuity at s = t
    {
        for (double bv : {3.1, 3.5, 4.0}) {
            const Order beta(bv);
            double worst = 0.0;
            for (int i = 0; i <= 100; ++i) {
                const double t = i / 100.0;
                const double g = gamma_fn(bv);
                const double b1 =
                    (t * (bv - 1.0) * std::pow(1.0 - t, bv - 2.0) -
                     std::pow(0.0, bv - 1.0)) /
                    g;
                const double b2 = t * (bv - 1.0) * std::pow(1.0 - t, bv - 2.0) / g;
                worst = std::max(worst, std::abs(b1 - b2));
            }
            test.expect_le(worst, 1e-14,
                           "green: branch continuity, beta = " + std::to_string(bv));
        }
    }

    // kernel bounds on a coarse grid (the acceptance suite runs 201x201)
    {
        for (double bv : {3.1, 3.5, 4.0}) {
            const Order beta(bv);
            double min_h = 0.0, max_dom = 0.0, max_low = 0.0;
            const int n = 60;
            for (int i = 0; i <= n; ++i) {
                const double t = static_cast<double>(i) / n;
                for (int j = 0; j <= n; ++j) {
                    const double s = static_cast<double>(j) / n;
                    const double v = green_eval(t, s, beta);
                    const double v1 = green_eval(1.0, s, beta);
                    min_h = std::min(min_h, v);
                    max_dom = std::max(max_dom, v - v1);
                    if (i > 0 && i < n && j > 0 && j < n)
                        max_low = std::max(max_low, std::pow(t, bv - 1.0) * v1 - v);
                }
            }
            test.expect_le(-min_h, 1e-12, "green: nonnegative, beta = " + std::to_string(bv));
            test.expect_le(max_dom, 1e-12,
                           "green: dominated by H(1,s), beta = " + std::to_string(bv));
            test.expect_le(max_low, 1e-12,
                           "green: lower bound t^(b-1) H(1,s), beta = " + std::to_string(bv));
        }
    }

    // --- green_inner_integral ---
    {
        const GridFunction one(128, 1.0);
        // closed form for w = 1: s/Gamma(b) - s^b/Gamma(b+1)
        for (double s : {0.0, 0.25, 0.5, 0.77, 1.0}) {
            const double want =
                s / gamma_fn(4.0) - std::pow(s, 4.0) / gamma_fn(5.0);
            test.expect_near(green_inner_integral(s, one, beta4), want, 1e-14,
                             "green: row integral of 1 at s = " + std::to_string(s));
        }
        const GridFunction zero(128, 0.0);
        test.expect_near(green_inner_integral(0.6, zero, beta4), 0.0, 0.0,
                         "green: row integral of 0");
        test.expect_near(green_inner_integral(1.0, one, beta4), 1.0 / 8.0, 1e-15,
                         "green: row integral of 1 at s = 1 is 1/8");
        // the rule integrates the piecewise-linear interpolant exactly: for
        // w = t the value is integral tau H(s,tau) dtau; check s = 1, beta = 4
        // against the polynomial antiderivative 1/30
        const GridFunction lin = GridFunction::sample(128, [](double t) { return t; });
        test.expect_near(green_inner_integral(1.0, lin, beta4), 1.0 / 30.0, 1e-15,
                         "green: row integral of tau at s = 1 is 1/30");
    }

    // --- h1_integral ---
    {
        const H1Result r1 = h1_integral([](double) { return 1.0; }, beta4);
        test.expect_true(r1.satisfied && r1.converged, "h1: a = 1 satisfied");
        test.expect_near(r1.value, 1.0 / 8.0, 1e-10, "h1: a = 1 value 1/8");

        const H1Result r0 = h1_integral([](double) { return 0.0; }, beta4);
        test.expect_true(!r0.satisfied, "h1: a = 0 fails");
        test.expect_near(r0.value, 0.0, 1e-15, "h1: a = 0 value");

        const H1Result rt = h1_integral([](double t) { return t; }, beta4);
        test.expect_near(rt.value, 1.0 / 30.0, 1e-10, "h1: a = tau value 1/30");

        // integrable endpoint singularity tau^(-1/2):
        // integral tau^(-1/2) (3(1-tau)^2 - (1-tau)^3)/6 dtau
        //   = (1/6)(3 B(1/2,3) - B(1/2,4)) = (1/6)(3*32/15 - 32*3/(35*3)) ... frozen below
        const H1Result rs =
            h1_integral([](double t) { return 1.0 / std::sqrt(t); }, beta4);
        const double b_half_3 = 2.0 * (1.0 - 2.0 / 3.0 + 1.0 / 5.0);      // B(1/2,3)
        const double b_half_4 = 2.0 * (1.0 - 1.0 + 3.0 / 5.0 - 1.0 / 7.0); // B(1/2,4)
        const double want = (3.0 * b_half_3 - b_half_4) / 6.0;
        test.expect_true(rs.satisfied, "h1: singular weight converges");
        test.expect_near(rs.value, want, 1e-9, "h1: singular weight value");
    }

    // --- green_weight_integral ---
    {
        const double tail =
            green_weight_integral([](double) { return 1.0; }, beta4, 0.5, 1.0);
        // with v = 1 - tau: integral_0^{1/2} (3v^2 - v^3)/6 dv = (1/8 - 1/64)/6
        const double want = (0.125 - 0.015625) / 6.0;
        test.expect_near(tail, want, 1e-10, "green: tail integral closed form");
        test.expect_throw(
            [&] { green_weight_integral([](double) { return 1.0; }, beta4, 0.7, 0.2); },
            "green: tail integral rejects bad interval");
    }

    // --- c_delta ---
    {
        const CDelta c1 = c_delta(Order(2.0), beta4, 2.0, 0.5);
        test.expect_near(c1.value, 0.03125, 1e-10, "c_delta: alpha=2, q=2, delta=0.5");
        test.expect_true(c1.in_unit_interval, "c_delta: inside (0,1)");
        const CDelta c2 = c_delta(Order(2.0), beta4, 2.0, 0.999);
        test.expect_near(c2.value, std::pow(0.999, 4.0) / 2.0, 1e-9,
                         "c_delta: delta = 0.999");
        const CDelta c3 = c_delta(Order(2.0), beta4, 2.0, 1e-6);
        test.expect_le(c3.value, 1e-12, "c_delta: vanishes as delta -> 0");
        test.expect_throw([&] { c_delta(Order(2.0), beta4, 2.0, 1.0); },
                          "c_delta: rejects delta = 1");
        // membership in (0,1) is reported, never assumed
        const CDelta big = c_delta(Order(1.05), beta4, 1.2, 0.99);
        test.expect_true(std::isfinite(big.value), "c_delta: extreme case computes");
    }

    return test.summary("green");
}
