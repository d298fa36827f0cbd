#pragma once

// Counter-based random number streams. A stream is a (key, counter) pair;
// output i is a pure function of (key, i), so streams are value types that
// can be copied, split and handed to worker threads without shared state.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace rwrs {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer; full-avalanche 64-bit mix.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

// Two-input avalanche mix; used to derive subkeys from (seed, index) pairs.
constexpr std::uint64_t mix2(std::uint64_t a, std::uint64_t b) {
    return mix64(a ^ (mix64(b + kGolden) + 0x632be59bd9b4e019ULL));
}

// Salts separating the independent consumers of one master seed.
inline constexpr std::uint64_t kSaltWalk = 0x57414c4b00000001ULL;
inline constexpr std::uint64_t kSaltScenery = 0x5343454e00000002ULL;
inline constexpr std::uint64_t kSaltLimit = 0x4c494d4900000003ULL;
inline constexpr std::uint64_t kSaltBootstrap = 0x424f4f5400000004ULL;
inline constexpr std::uint64_t kSaltEstimateB = 0x4253544d00000005ULL;

class RngStream {
  public:
    RngStream() = default;
    explicit RngStream(std::uint64_t key, std::uint64_t counter = 0)
        : key_(key), ctr_(counter) {}

    std::uint64_t next_u64() {
        ctr_ += 1;
        return mix64(key_ + kGolden * ctr_);
    }

    // Uniform on the open interval (0, 1); never returns an endpoint.
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    bool coin() { return (next_u64() & 1u) != 0; }

    double exponential() { return -std::log(uniform01()); }

    // Box-Muller; one value per call, two uniforms consumed.
    double normal() {
        const double u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    // Independent stream derived from the next counter value; advances *this,
    // so successive splits (any tags) give unrelated streams.
    RngStream split(std::uint64_t tag) {
        return RngStream(mix2(next_u64(), tag));
    }

    std::uint64_t key() const { return key_; }
    std::uint64_t counter() const { return ctr_; }

  private:
    std::uint64_t key_ = 0;
    std::uint64_t ctr_ = 0;
};

}  // namespace rwrs
