// Timing comparison of the serial reference kernels against the OpenMP ones.
// Grids are allocated once outside the timed region.
#include <chrono>
#include <cstdio>

#include "semsans/textures.hpp"

using clock_type = std::chrono::steady_clock;

template <class F>
double time_ms(F&& f, int reps = 5) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = clock_type::now();
        f();
        const auto t1 = clock_type::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

int main() {
    using namespace semsans;
    const double kappa = 21660.0;  // rad/m, 145 um period scale
    const double k0z = 6.28e9;

    std::printf("%-12s %11s %10s %10s %8s\n", "kernel", "grid", "serial ms", "omp ms",
                "speedup");
    for (int n : {256, 512, 1024, 2048}) {
        GridSpec gs;
        gs.nx = gs.ny = n;
        FieldGrid g = spin_texture(kappa, 1.2, 0.7, gs, EvalMode::Serial);  // warm alloc
        volatile double sink = 0.0;

        const double ts = time_ms([&] {
            fill_spin_texture(g, kappa, 1.2, 0.7, EvalMode::Serial);
            sink = sink + g.bloch.back()[2];
        });
        const double tp = time_ms([&] {
            fill_spin_texture(g, kappa, 1.2, 0.7, EvalMode::Parallel);
            sink = sink + g.bloch.back()[2];
        });
        std::printf("%-12s %5dx%-5d %10.2f %10.2f %8.2f\n", "spin_texture", n, n, ts, tp,
                    ts / tp);

        FieldGrid go = oam_density(kappa, k0z, 1.2, 0.7, 0.0, gs, true, EvalMode::Serial);
        const double os = time_ms([&] {
            fill_oam_density(go, kappa, k0z, 1.2, 0.7, 0.0, true, EvalMode::Serial);
            sink = sink + go.oam.back()[2];
        });
        const double op = time_ms([&] {
            fill_oam_density(go, kappa, k0z, 1.2, 0.7, 0.0, true, EvalMode::Parallel);
            sink = sink + go.oam.back()[2];
        });
        std::printf("%-12s %5dx%-5d %10.2f %10.2f %8.2f\n", "oam_density", n, n, os, op,
                    os / op);
    }
    return 0;
}
