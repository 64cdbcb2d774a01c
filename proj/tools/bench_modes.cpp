// Compares the serial reference kernels against the OpenMP variants and
// reports wall times plus speedups.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <numbers>

#include "antikz/evolve.hpp"
#include "antikz/observables.hpp"
#include "antikz/trajectories.hpp"

namespace {

template <typename F>
double time_s(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main() {
    using namespace antikz;

    std::printf("threads available: %d\n\n", omp_get_max_threads());

    {
        ModelParams p{1024, 1.0, 100.0, 1e-3, Protocol::annealing()};
        IntegratorConfig cfg;
        std::printf("evolve_all, N=%d, tau=%g, W^2=%g, dt=%g\n", p.n_sites, p.tau, p.w2,
                    cfg.step_size(p));
        double n_serial = 0.0, n_parallel = 0.0;
        const double ts = time_s([&] {
            n_serial = excitation_density(evolve_all_serial(p, cfg), p);
        });
        const double tp = time_s([&] {
            n_parallel = excitation_density(evolve_all(p, cfg), p);
        });
        std::printf("  serial   %8.3f s   n_W = %.12g\n", ts, n_serial);
        std::printf("  parallel %8.3f s   n_W = %.12g\n", tp, n_parallel);
        std::printf("  speedup  %8.2fx   identical: %s\n\n", ts / tp,
                    n_serial == n_parallel ? "yes" : "NO");
    }

    {
        ModelParams p{1024, 1.0, 10.0, 1e-2, Protocol::annealing()};
        TrajectoryConfig cfg{20000, 1e-3, 42, TrajectoryScope::PerMode};
        const double k = std::numbers::pi / 2;
        std::printf("noise_average, k=pi/2, tau=%g, W^2=%g, M=%d, dt=%g\n", p.tau, p.w2,
                    cfg.n_traj, cfg.dt);
        Eigen::Matrix2cd ms, mp;
        const double ts = time_s([&] { ms = noise_average_serial(k, p, cfg).mean.rho; });
        const double tp = time_s([&] { mp = noise_average(k, p, cfg).mean.rho; });
        std::printf("  serial   %8.3f s   rho_00 = %.12g\n", ts, ms(0, 0).real());
        std::printf("  parallel %8.3f s   rho_00 = %.12g\n", tp, mp(0, 0).real());
        std::printf("  speedup  %8.2fx   identical: %s\n", ts / tp,
                    ms == mp ? "yes" : "NO");
    }
    return 0;
}
