#pragma once

// Lattice random walk with incrementally maintained occupation counts
// N_n(x), self-intersection functional V_n = sum_x N_n(x)^2 and visited
// range. Single writer per state; distinct replicates own distinct states.

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "rwrs/rng.hpp"
#include "rwrs/stable.hpp"

namespace rwrs {

struct WalkState {
    std::vector<std::int64_t> positions;  // S_1..S_n (empty when record_positions off)
    std::unordered_map<std::int64_t, std::int64_t> occupation;  // site -> N_n(site)
    std::int64_t v_n = 0;   // sum_x N_n(x)^2; n <= v_n <= n^2
    std::uint64_t range = 0;  // distinct visited sites
    std::uint64_t n = 0;
    std::int64_t current = 0;  // S_n (origin before the first step)
    bool record_positions = true;

    // Number of pairs i < j with S_i = S_j; v_n = n + 2 * this.
    std::int64_t self_intersections() const {
        return (v_n - static_cast<std::int64_t>(n)) / 2;
    }
};

// Advance the walk by `steps` increments drawn from `sampler`. Occupation,
// v_n and range are updated in O(1) amortized per step: stepping onto a site
// with prior count c adds 2c+1 to v_n.
void extend_walk(WalkState& state, const StepSampler& sampler, std::uint64_t steps,
                 RngStream& stream);

// Apply one already-sampled increment; shared by extend_walk and the runner.
inline void apply_step(WalkState& state, std::int64_t increment) {
    state.current += increment;
    std::int64_t& count = state.occupation[state.current];
    state.v_n += 2 * count + 1;
    if (count == 0) state.range += 1;
    count += 1;
    state.n += 1;
    if (state.record_positions) state.positions.push_back(state.current);
}

// Read-only copy of N_n(.).
std::unordered_map<std::int64_t, std::int64_t> occupation_snapshot(const WalkState& state);

}  // namespace rwrs
