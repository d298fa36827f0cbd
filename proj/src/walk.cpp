#include "rwrs/walk.hpp"

namespace rwrs {

void extend_walk(WalkState& state, const StepSampler& sampler, std::uint64_t steps,
                 RngStream& stream) {
    if (state.record_positions) state.positions.reserve(state.positions.size() + steps);
    for (std::uint64_t i = 0; i < steps; ++i) apply_step(state, sampler.sample(stream));
}

std::unordered_map<std::int64_t, std::int64_t> occupation_snapshot(const WalkState& state) {
    return state.occupation;
}

}  // namespace rwrs
