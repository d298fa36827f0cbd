#pragma once

// Lazily evaluated iid scenery. The value at a site is a pure function of
// (master_seed, site): a dedicated counter-based stream is keyed by an
// avalanche mix of the two, so evaluation order, path extension and parallel
// replicates all observe one consistent scenery.

#include <cstdint>
#include <unordered_map>

#include "rwrs/rng.hpp"
#include "rwrs/stable.hpp"

namespace rwrs {

class SceneryStore {
  public:
    SceneryStore(SceneryLaw law, std::uint64_t master_seed, bool cache_enabled = true)
        : law_(law), seed_(master_seed), cache_on_(cache_enabled) {
        law_.validate();
    }

    double value(std::int64_t site) const {
        if (cache_on_) {
            auto [it, inserted] = cache_.try_emplace(site, 0.0);
            if (inserted) it->second = compute(site);
            return it->second;
        }
        return compute(site);
    }

    const SceneryLaw& law() const { return law_; }
    std::uint64_t seed() const { return seed_; }
    std::size_t cached_sites() const { return cache_.size(); }

  private:
    double compute(std::int64_t site) const {
        RngStream stream(mix2(mix2(seed_, kSaltScenery), static_cast<std::uint64_t>(site)));
        return sample_scenery_value(law_, stream);
    }

    SceneryLaw law_;
    std::uint64_t seed_;
    bool cache_on_;
    mutable std::unordered_map<std::int64_t, double> cache_;
};

}  // namespace rwrs
