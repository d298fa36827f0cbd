#include "rwrs/runner.hpp"

#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rwrs/limit.hpp"
#include "rwrs/scenery.hpp"
#include "rwrs/ustat.hpp"
#include "rwrs/walk.hpp"

namespace rwrs {

SimulationSetup::SimulationSetup(const ExperimentConfig& cfg)
    : step(cfg.step_law),
      kernel(cfg.kernel),
      parts(hoeffding_split(kernel, cfg.scenery_law)) {}

std::uint64_t walk_seed_for(std::uint64_t master_seed, std::uint32_t replicate) {
    return mix2(mix2(master_seed, kSaltWalk), replicate);
}

std::uint64_t scenery_seed_for(std::uint64_t master_seed, std::uint32_t replicate) {
    return mix2(mix2(master_seed, kSaltScenery), replicate);
}

double lil_normalizer(std::uint64_t k) {
    const double kd = static_cast<double>(k);
    const double loglog = std::log(std::log(kd));
    return std::pow(kd, 1.75) * std::pow(loglog, 0.75);
}

namespace {

// One pass over the path; Acc is SeparableUStat or IncrementalUStat.
template <class Acc, class StepFn>
ReplicateResult run_with(const ExperimentConfig& cfg, const SimulationSetup& setup,
                         std::uint32_t replicate, Acc& acc, StepFn&& acc_step) {
    ReplicateResult out;
    out.replicate = replicate;
    out.records.reserve(cfg.n_grid.size());

    RngStream walk_stream(walk_seed_for(cfg.master_seed, replicate));
    SceneryStore scenery(cfg.scenery_law, scenery_seed_for(cfg.master_seed, replicate));

    WalkState walk;
    walk.record_positions = false;

    const bool track_lil = cfg.lil.enabled;
    double mplus = -std::numeric_limits<double>::infinity();
    double mminus = std::numeric_limits<double>::infinity();

    std::size_t next_grid = 0;
    const std::uint64_t n_max = cfg.n_max();
    for (std::uint64_t k = 1; k <= n_max; ++k) {
        apply_step(walk, setup.step.sample(walk_stream));
        acc_step(acc, walk.current, scenery.value(walk.current));

        if (track_lil && k >= cfg.lil.k_min) {
            const double z = acc.record().u / lil_normalizer(k);
            if (z > mplus) mplus = z;
            if (z < mminus) mminus = z;
        }
        if (next_grid < cfg.n_grid.size() && k == cfg.n_grid[next_grid]) {
            const UStatRecord rec = acc.record();
            out.records.push_back(
                {rec.n, rec.u, rec.l, rec.r, walk.v_n, walk.range});
            ++next_grid;
        }
    }
    if (track_lil)
        out.lil = LilTrack{mplus, mminus, cfg.lil.k_min, n_max};
    return out;
}

}  // namespace

ReplicateResult run_replicate(const ExperimentConfig& cfg, const SimulationSetup& setup,
                              std::uint32_t replicate) {
    if (setup.kernel.separable()) {
        SeparableUStat acc(cfg.kernel);
        return run_with(cfg, setup, replicate, acc,
                        [](SeparableUStat& a, std::int64_t, double xi) { a.step(xi); });
    }
    IncrementalUStat acc(setup.kernel, setup.parts);
    return run_with(cfg, setup, replicate, acc,
                    [](IncrementalUStat& a, std::int64_t site, double xi) {
                        a.step(site, xi);
                    });
}

std::vector<ReplicateResult> run_replicates_serial(const ExperimentConfig& cfg) {
    const SimulationSetup setup(cfg);
    std::vector<ReplicateResult> out(cfg.replicates);
    for (std::uint32_t r = 0; r < cfg.replicates; ++r)
        out[r] = run_replicate(cfg, setup, r);
    return out;
}

int resolve_threads(int requested) {
#ifdef _OPENMP
    return requested > 0 ? requested : omp_get_max_threads();
#else
    (void)requested;
    return 1;
#endif
}

std::vector<ReplicateResult> run_replicates(const ExperimentConfig& cfg, int threads) {
    const SimulationSetup setup(cfg);
    std::vector<ReplicateResult> out(cfg.replicates);
    const int nt = resolve_threads(threads);
    const auto count = static_cast<std::int64_t>(cfg.replicates);
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (std::int64_t r = 0; r < count; ++r)
        out[static_cast<std::size_t>(r)] =
            run_replicate(cfg, setup, static_cast<std::uint32_t>(r));
    return out;
}

std::vector<double> kesten_spitzer_batch(int count, double alpha, double beta, double t,
                                         double dt, double dx, double walk_scale,
                                         double noise_scale, std::uint64_t key,
                                         int threads) {
    std::vector<double> out(static_cast<std::size_t>(count));
    const int nt = resolve_threads(threads);
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (int i = 0; i < count; ++i) {
        RngStream stream(mix2(key, static_cast<std::uint64_t>(i)));
        out[static_cast<std::size_t>(i)] =
            kesten_spitzer_sample(alpha, beta, t, dt, dx, stream, walk_scale,
                                  noise_scale)
                .value;
    }
    return out;
}

}  // namespace rwrs
