// Benchmark: serial reference vs OpenMP replication kernels on the two
// heaviest drivers. Outputs one row per kernel with wall times and speedup.

#include <chrono>
#include <cstdio>

#include "evident/boundary.hpp"
#include "evident/harness.hpp"
#include "evident/parallel.hpp"

using namespace evident;
using Clock = std::chrono::steady_clock;

namespace {

double time_ms(const std::function<void()>& fn) {
    const auto t0 = Clock::now();
    fn();
    const auto t1 = Clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-28s %10.1f ms %10.1f ms %8.2fx\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms);
}

}  // namespace

int main() {
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");
    std::printf("workers: %d\n", par::thread_count());

    const std::uint64_t seed = 42;

    {
        const Distribution p1 = Distribution::bernoulli(0.65);
        const Distribution p0 = Distribution::bernoulli(0.5);
        const CrossingConfig cfg(100.0, 2000);
        StoppingReport rs, rp;
        const double ts =
            time_ms([&] { rs = simulate_stopping(p1, p1, p0, cfg, 200000, seed, par::Mode::serial); });
        const double tp =
            time_ms([&] { rp = simulate_stopping(p1, p1, p0, cfg, 200000, seed, par::Mode::openmp); });
        row("simulate_stopping b=100", ts, tp);
        if (rs.mean != rp.mean || rs.sd != rp.sd)
            std::printf("  MISMATCH: serial and openmp reports differ\n");
    }

    {
        ExperimentResult rs, rp;
        const double ts =
            time_ms([&] { rs = experiment_type1(seed, 10000, 500, 20.0, par::Mode::serial); });
        const double tp =
            time_ms([&] { rp = experiment_type1(seed, 10000, 500, 20.0, par::Mode::openmp); });
        row("type1 10k reps", ts, tp);
        if (rs.metrics != rp.metrics)
            std::printf("  MISMATCH: serial and openmp metrics differ\n");
    }

    {
        std::vector<StoppingReport> rs, rp;
        const double ts = time_ms([&] { rs = verify_table2(seed, 20000, par::Mode::serial); });
        const double tp = time_ms([&] { rp = verify_table2(seed, 20000, par::Mode::openmp); });
        row("stopping table smoke", ts, tp);
        for (std::size_t i = 0; i < rs.size(); ++i)
            if (rs[i].mean != rp[i].mean)
                std::printf("  MISMATCH at b=%g\n", rs[i].threshold_b);
    }

    return 0;
}
