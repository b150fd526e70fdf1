// Timing comparison of the serial reference kernels against the
// OpenMP-parallel ones. Both paths produce bit-identical output (checked by
// the unit suites); this target only reports throughput.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fracbvp/bvp.hpp"

using namespace fracbvp;

namespace {

template <class F>
double best_of(int reps, F&& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const double dt =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        best = std::min(best, dt);
    }
    return best;
}

volatile double g_sink = 0.0;

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (OpenMP disabled)\n");
#endif
    std::printf("%-22s %8s %12s %12s %9s\n", "kernel", "N", "serial [s]", "openmp [s]",
                "speedup");
    for (int n : {256, 512, 1024, 2048}) {
        const GridFunction y =
            GridFunction::sample(n, [](double t) { return std::exp(-t) + t * t; });

        const Order alpha(1.5);
        const double ts = best_of(5, [&] { g_sink = rl_integral_serial(y, alpha)[n]; });
        const double tp = best_of(5, [&] { g_sink = rl_integral(y, alpha)[n]; });
        std::printf("%-22s %8d %12.5f %12.5f %8.2fx\n", "rl_integral", n, ts, tp,
                    ts / tp);

        const Order beta(3.5);
        const double ws = best_of(5, [&] { g_sink = apply_w_serial(y, beta)[n]; });
        const double wp = best_of(5, [&] { g_sink = apply_w(y, beta)[n]; });
        std::printf("%-22s %8d %12.5f %12.5f %8.2fx\n", "apply_w", n, ws, wp, ws / wp);
    }
    return 0;
}
