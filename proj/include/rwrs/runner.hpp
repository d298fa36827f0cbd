#pragma once

// Replicate production. Each replicate grows one walk+scenery pair and
// snapshots (U, L, R, V, range) on the configured n-grid from running
// accumulators; the optional LIL track scans U_k / (k^{7/4} (log log k)^{3/4})
// over every k >= k_min. Replicates share nothing: all state is local and all
// randomness flows from per-replicate derived seeds, so the OpenMP batch
// runner and the serial reference runner produce bit-identical results for
// any thread count.

#include <cstdint>
#include <optional>
#include <vector>

#include "rwrs/config.hpp"
#include "rwrs/kernel.hpp"
#include "rwrs/stable.hpp"

namespace rwrs {

struct GridRecord {
    std::uint64_t n = 0;
    double u = 0.0;
    double l = 0.0;
    double r = 0.0;
    std::int64_t v = 0;
    std::uint64_t range = 0;
};

struct LilTrack {
    double mplus = 0.0;   // sup_k U_k / (k^{7/4} (log log k)^{3/4})
    double mminus = 0.0;  // inf of the same
    std::uint64_t k_min = 0;
    std::uint64_t n_max = 0;
};

struct ReplicateResult {
    std::uint32_t replicate = 0;
    std::vector<GridRecord> records;
    std::optional<LilTrack> lil;
};

// Immutable pieces shared read-only by all replicate workers.
struct SimulationSetup {
    explicit SimulationSetup(const ExperimentConfig& cfg);
    StepSampler step;
    Kernel kernel;
    HoeffdingParts parts;
};

std::uint64_t walk_seed_for(std::uint64_t master_seed, std::uint32_t replicate);
std::uint64_t scenery_seed_for(std::uint64_t master_seed, std::uint32_t replicate);

// U_k normalizer of the iterated-logarithm track; k >= 16.
double lil_normalizer(std::uint64_t k);

ReplicateResult run_replicate(const ExperimentConfig& cfg, const SimulationSetup& setup,
                              std::uint32_t replicate);

// Serial reference runner; kept alongside the OpenMP runner for testing and
// benchmarking.
std::vector<ReplicateResult> run_replicates_serial(const ExperimentConfig& cfg);

// OpenMP batch runner. Results land in a vector indexed by replicate, so the
// merge order is independent of scheduling.
std::vector<ReplicateResult> run_replicates(const ExperimentConfig& cfg, int threads);

int resolve_threads(int requested);

// Independent Kesten-Spitzer draws, one derived stream per draw; parallelized
// across draws with the same determinism guarantee as the replicate runner.
std::vector<double> kesten_spitzer_batch(int count, double alpha, double beta, double t,
                                         double dt, double dx, double walk_scale,
                                         double noise_scale, std::uint64_t key,
                                         int threads);

}  // namespace rwrs
