// Benchmark comparing the evaluation kernels and the batch runners:
//   * naive O(n^2) reference vs site-indexed incremental vs separable closed
//     form, on one walk
//   * serial replicate runner vs the OpenMP runner, same workload
// Sizes scale with --scale (default 1); results are wall-clock only.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#include "rwrs/runner.hpp"
#include "rwrs/scenery.hpp"
#include "rwrs/ustat.hpp"
#include "rwrs/walk.hpp"

using namespace rwrs;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

ExperimentConfig bench_config(std::uint64_t n_max, std::uint32_t replicates) {
    ExperimentConfig cfg;
    cfg.alpha = 2.0;
    cfg.beta = 2.0;
    cfg.replicates = replicates;
    cfg.master_seed = 0xbe9c;
    cfg.step_law = {StepKind::LazySimple, 2.0, 0.5, 0};
    cfg.scenery_law = {SceneryKind::Rademacher, 2.0, 1.0};
    cfg.kernel.kind = KernelKind::ProductPlusSum;
    cfg.n_grid.clear();
    for (std::uint64_t n = 1024; n <= n_max; n *= 2) cfg.n_grid.push_back(n);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    int scale = 1;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--scale") == 0 && i + 1 < argc)
            scale = std::atoi(argv[i + 1]);
    }

    // --- evaluator comparison on one walk ---
    const std::uint64_t n_eval = 2000ull * static_cast<std::uint64_t>(scale);
    const StepSampler step({StepKind::LazySimple, 2.0, 0.5, 0});
    const Kernel kernel(KernelSpec{});
    const SceneryLaw scenery_law{SceneryKind::Rademacher, 2.0, 1.0};
    const HoeffdingParts parts = hoeffding_split(kernel, scenery_law);
    const SceneryStore scenery(scenery_law, 42);

    WalkState walk;
    RngStream walk_stream(7);
    extend_walk(walk, step, n_eval, walk_stream);

    std::printf("evaluators, one LazySimple walk of n = %llu\n",
                static_cast<unsigned long long>(n_eval));
    auto t0 = Clock::now();
    const double u_naive = u_statistic_naive(kernel, scenery, walk);
    const double t_naive = seconds_since(t0);
    std::printf("  naive (serial reference)   %8.3f s   u = %.6g\n", t_naive, u_naive);

    t0 = Clock::now();
    const UStatRecord by_sites = u_statistic_by_sites(kernel, parts, scenery, walk);
    const double t_sites = seconds_since(t0);
    std::printf("  by-sites incremental       %8.3f s   u = %.6g   (x%.1f)\n", t_sites,
                by_sites.u, t_naive / t_sites);

    t0 = Clock::now();
    SeparableUStat sep(kernel.spec());
    for (std::int64_t site : walk.positions) sep.step(scenery.value(site));
    const UStatRecord sep_rec = sep.record();
    const double t_sep = seconds_since(t0);
    std::printf("  separable closed form      %8.3f s   u = %.6g   (x%.1f)\n", t_sep,
                sep_rec.u, t_naive / t_sep);

    // --- batch runner comparison ---
    const ExperimentConfig cfg =
        bench_config(1ull << 16, static_cast<std::uint32_t>(16 * scale));
    std::printf("runners, %u replicates to n = %llu\n", cfg.replicates,
                static_cast<unsigned long long>(cfg.n_max()));
    t0 = Clock::now();
    const auto serial = run_replicates_serial(cfg);
    const double t_serial = seconds_since(t0);
    std::printf("  serial reference           %8.3f s\n", t_serial);

    t0 = Clock::now();
    const auto parallel = run_replicates(cfg, 0);
    const double t_parallel = seconds_since(t0);
    std::printf("  OpenMP                     %8.3f s   (x%.2f)\n", t_parallel,
                t_serial / t_parallel);

    bool identical = serial.size() == parallel.size();
    for (std::size_t r = 0; identical && r < serial.size(); ++r) {
        for (std::size_t g = 0; identical && g < serial[r].records.size(); ++g) {
            identical = serial[r].records[g].u == parallel[r].records[g].u &&
                        serial[r].records[g].v == parallel[r].records[g].v;
        }
    }
    std::printf("  outputs bit-identical: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
