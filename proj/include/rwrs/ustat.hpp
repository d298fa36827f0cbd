#pragma once

// U-statistic evaluation U_n = sum_{i<j} h(xi(S_i), xi(S_j)) along a walk,
// three routes:
//   * u_statistic_naive     O(n^2) double loop; serial reference, oracle only
//   * IncrementalUStat      site-indexed, O(range) per step, any kernel
//   * SeparableUStat        O(1) per step from running scenery sums; presets
// All routes also carry the linear part L_n = sum_i h1(xi(S_i)) and the
// remainder r = u - (n-1) l, so u = (n-1) l + r holds by construction.

#include <cstdint>
#include <unordered_map>

#include "rwrs/kernel.hpp"
#include "rwrs/walk.hpp"

namespace rwrs {

struct UStatRecord {
    std::uint64_t n = 0;
    double u = 0.0;
    double l = 0.0;
    double r = 0.0;
};

inline double remainder_of(std::uint64_t n, double u, double l) {
    return n == 0 ? u : u - static_cast<double>(n - 1) * l;
}

// Exact double loop over 1 <= i < j <= n; n < 2 yields the empty sum 0.
// SceneryT needs double value(int64_t) const; tests may pass map-backed fakes.
template <class SceneryT>
double u_statistic_naive(const Kernel& kernel, const SceneryT& scenery,
                         const WalkState& path) {
    const auto& pos = path.positions;
    double u = 0.0;
    for (std::size_t j = 1; j < pos.size(); ++j) {
        const double xj = scenery.value(pos[j]);
        for (std::size_t i = 0; i < j; ++i) u += kernel.eval(scenery.value(pos[i]), xj);
    }
    return u;
}

// Streaming site-indexed evaluator. Stepping onto site y adds
// sum_{x != y} N(x) h(xi(x), xi(y)) + N(y) h(xi(y), xi(y)) to u (counts taken
// before increment) and h1(xi(y)) to l; O(occupied sites) per step. Scenery
// values and h1 are cached per site, so Monte Carlo h1 costs once per site.
class IncrementalUStat {
  public:
    IncrementalUStat(const Kernel& kernel, const HoeffdingParts& parts)
        : kernel_(&kernel), parts_(&parts) {}

    void step(std::int64_t site, double xi) {
        auto [it, inserted] = sites_.try_emplace(site);
        SiteRec& rec = it->second;
        if (inserted) {
            rec.xi = xi;
            rec.h1xi = parts_->h1(xi);
        }
        double cross = 0.0;
        for (const auto& [x, other] : sites_) {
            if (x != site) cross += static_cast<double>(other.count) * kernel_->eval(other.xi, rec.xi);
        }
        u_ += cross + static_cast<double>(rec.count) * kernel_->eval(rec.xi, rec.xi);
        l_ += rec.h1xi;
        rec.count += 1;
        n_ += 1;
    }

    UStatRecord record() const { return {n_, u_, l_, remainder_of(n_, u_, l_)}; }
    std::uint64_t n() const { return n_; }

  private:
    struct SiteRec {
        std::int64_t count = 0;
        double xi = 0.0;
        double h1xi = 0.0;
    };
    const Kernel* kernel_;
    const HoeffdingParts* parts_;
    std::unordered_map<std::int64_t, SiteRec> sites_;
    double u_ = 0.0;
    double l_ = 0.0;
    std::uint64_t n_ = 0;
};

// O(1)-per-step evaluator for the preset kernels, from the running sums
// P = sum xi(S_i), Q = sum xi(S_i)^2 and their sign analogues:
//   Sum:                u = (n-1) P
//   Product:            u = (P^2 - Q) / 2
//   ProductPlusSum:     u = (P^2 - Q) / 2 + (n-1) P
//   BoundedSignProduct: u = (Ps^2 - Qs) / 2
// A nonzero centering c shifts u by -c n(n-1)/2 and l by -c n.
class SeparableUStat {
  public:
    explicit SeparableUStat(const KernelSpec& spec) : kind_(spec.kind), c_(spec.centering) {
        if (spec.kind == KernelKind::Custom)
            throw std::invalid_argument("SeparableUStat: custom kernels not separable");
    }

    void step(double xi) {
        p_ += xi;
        q_ += xi * xi;
        const double s = Kernel::sign(xi);
        ps_ += s;
        qs_ += s * s;
        n_ += 1;
    }

    UStatRecord record() const {
        const double n = static_cast<double>(n_);
        double u = 0.0, l = 0.0;
        switch (kind_) {
            case KernelKind::Sum:
                u = (n - 1.0) * p_;
                l = p_;
                break;
            case KernelKind::Product: u = 0.5 * (p_ * p_ - q_); break;
            case KernelKind::ProductPlusSum:
                u = 0.5 * (p_ * p_ - q_) + (n - 1.0) * p_;
                l = p_;
                break;
            case KernelKind::BoundedSignProduct: u = 0.5 * (ps_ * ps_ - qs_); break;
            default: break;
        }
        if (n_ == 0) return {0, 0.0, 0.0, 0.0};
        u -= c_ * 0.5 * n * (n - 1.0);
        l -= c_ * n;
        return {n_, u, l, remainder_of(n_, u, l)};
    }

    std::uint64_t n() const { return n_; }

  private:
    KernelKind kind_;
    double c_;
    double p_ = 0.0, q_ = 0.0, ps_ = 0.0, qs_ = 0.0;
    std::uint64_t n_ = 0;
};

// Replays a finished walk through IncrementalUStat.
template <class SceneryT>
UStatRecord u_statistic_by_sites(const Kernel& kernel, const HoeffdingParts& parts,
                                 const SceneryT& scenery, const WalkState& path) {
    IncrementalUStat acc(kernel, parts);
    for (std::int64_t site : path.positions) acc.step(site, scenery.value(site));
    return acc.record();
}

}  // namespace rwrs
