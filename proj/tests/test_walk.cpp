#include <doctest.h>

#include <cstdlib>

#include "rwrs/walk.hpp"

using namespace rwrs;

namespace {

WalkState walk_from_increments(std::initializer_list<std::int64_t> increments) {
    WalkState state;
    for (std::int64_t inc : increments) apply_step(state, inc);
    return state;
}

// From-scratch recomputation oracle for v_n and the pair count.
void check_against_bruteforce(const WalkState& state) {
    std::unordered_map<std::int64_t, std::int64_t> counts;
    for (std::int64_t site : state.positions) counts[site] += 1;
    std::int64_t v = 0;
    for (const auto& [site, c] : counts) v += c * c;
    CHECK(state.v_n == v);
    CHECK(state.range == counts.size());

    std::int64_t pairs = 0;
    for (std::size_t i = 0; i < state.positions.size(); ++i)
        for (std::size_t j = i + 1; j < state.positions.size(); ++j)
            if (state.positions[i] == state.positions[j]) ++pairs;
    CHECK(state.v_n == static_cast<std::int64_t>(state.n) + 2 * pairs);
    CHECK(state.self_intersections() == pairs);
}

}  // namespace

TEST_CASE("enumerated path (+1, -1, +1)") {
    const WalkState state = walk_from_increments({+1, -1, +1});
    CHECK(state.positions == std::vector<std::int64_t>{1, 0, 1});
    CHECK(state.occupation.at(1) == 2);
    CHECK(state.occupation.at(0) == 1);
    CHECK(state.v_n == 5);  // 2^2 + 1^2; also 3 + 2 * one pair
    CHECK(state.range == 2);
    CHECK(state.n == 3);
    CHECK(state.self_intersections() == 1);
}

TEST_CASE("extending by zero steps is the identity") {
    const StepSampler sampler({StepKind::LazySimple, 2.0, 0.5, 0});
    RngStream stream(5);
    WalkState state;
    extend_walk(state, sampler, 100, stream);
    const WalkState before = state;
    extend_walk(state, sampler, 0, stream);
    CHECK(state.n == before.n);
    CHECK(state.v_n == before.v_n);
    CHECK(state.range == before.range);
    CHECK(state.positions == before.positions);
}

TEST_CASE("incremental v_n matches brute force on random paths") {
    const StepSampler lazy({StepKind::LazySimple, 2.0, 0.5, 0});
    const StepSampler heavy({StepKind::SymmetricPareto, 1.2, 0.2, 0});
    RngStream stream(6);
    for (int rep = 0; rep < 100; ++rep) {
        WalkState state;
        const std::uint64_t len = 50 + stream.next_u64() % 950;
        extend_walk(state, rep % 2 == 0 ? lazy : heavy, len, stream);
        check_against_bruteforce(state);
    }
}

TEST_CASE("long path: incremental aggregates match a from-scratch pass") {
    const StepSampler sampler({StepKind::LazySimple, 2.0, 0.5, 0});
    RngStream stream(7);
    WalkState state;
    extend_walk(state, sampler, 10000, stream);
    std::int64_t v = 0;
    std::int64_t total = 0;
    for (const auto& [site, c] : state.occupation) {
        v += c * c;
        total += c;
    }
    CHECK(state.v_n == v);
    CHECK(total == 10000);
}

TEST_CASE("v_n and range are nondecreasing") {
    const StepSampler sampler({StepKind::LazySimple, 2.0, 0.5, 0});
    RngStream stream(8);
    WalkState state;
    std::int64_t last_v = 0;
    std::uint64_t last_range = 0;
    for (int i = 0; i < 2000; ++i) {
        extend_walk(state, sampler, 1, stream);
        CHECK(state.v_n >= last_v);
        CHECK(state.range >= last_range);
        last_v = state.v_n;
        last_range = state.range;
    }
}

TEST_CASE("occupation snapshot") {
    SUBCASE("enumerated path") {
        const WalkState state = walk_from_increments({+1, -1, +1});
        const auto snap = occupation_snapshot(state);
        CHECK(snap.size() == 2);
        CHECK(snap.at(1) == 2);
        CHECK(snap.at(0) == 1);
    }
    SUBCASE("empty walk") {
        const WalkState state;
        CHECK(occupation_snapshot(state).empty());
    }
    SUBCASE("mass conservation at n = 1000") {
        const StepSampler sampler({StepKind::LazySimple, 2.0, 0.5, 0});
        RngStream stream(9);
        WalkState state;
        extend_walk(state, sampler, 1000, stream);
        std::int64_t total = 0;
        for (const auto& [site, c] : occupation_snapshot(state)) total += c;
        CHECK(total == 1000);
    }
}

TEST_CASE("positions recording can be disabled for long runs") {
    const StepSampler sampler({StepKind::LazySimple, 2.0, 0.5, 0});
    RngStream a(10), b(10);
    WalkState with_pos, without_pos;
    without_pos.record_positions = false;
    extend_walk(with_pos, sampler, 500, a);
    extend_walk(without_pos, sampler, 500, b);
    CHECK(without_pos.positions.empty());
    CHECK(without_pos.v_n == with_pos.v_n);
    CHECK(without_pos.range == with_pos.range);
    CHECK(without_pos.current == with_pos.current);
}
