#pragma once

// Stable variate generation and the concrete step/scenery laws used by the
// simulations: a lazy simple walk (finite variance), symmetric Pareto lattice
// steps (normal domain of attraction of an alpha-stable law for alpha < 2)
// and centered scenery laws attracted to a beta-stable law.

#include <cstdint>
#include <vector>

#include "rwrs/rng.hpp"

namespace rwrs {

struct StableParams {
    double index = 2.0;     // alpha in (0, 2]
    double skewness = 0.0;  // in [-1, 1]; ignored (treated as 0) when index == 2
    double scale = 1.0;     // > 0
    double shift = 0.0;

    void validate() const;  // throws std::invalid_argument
};

// One draw via the Chambers-Mallows-Stuck polar transformation.
// index == 2 yields Normal(shift, 2*scale^2); index == 1, skewness == 0
// yields Cauchy(shift, scale).
double sample_stable(const StableParams& params, RngStream& stream);

enum class StepKind { LazySimple, SymmetricPareto };

struct LatticeStepLaw {
    StepKind kind = StepKind::LazySimple;
    double index = 2.0;      // alpha; LazySimple requires 2, SymmetricPareto (0,2)
    double hold_prob = 0.5;  // P(X = 0) > 0, keeps the walk strongly aperiodic
    std::int64_t tail_cut = 0;  // 0 = untruncated; else support capped at |k| <= tail_cut

    void validate() const;
};

// Precomputed inverse-CDF tables for a step law; immutable after construction
// and safe to share read-only across replicate threads.
class StepSampler {
  public:
    explicit StepSampler(const LatticeStepLaw& law);

    std::int64_t sample(RngStream& stream) const;

    const LatticeStepLaw& law() const { return law_; }

    // Finite only for LazySimple (= 1 - hold_prob).
    double variance() const;

    // Exact P(|X| >= k) for k >= 1 (k within table reach); test oracle.
    double tail_prob_ge(std::int64_t k) const;

    // Per-magnitude normalizing constant c in P(X = +-k) = c k^{-1-alpha}.
    double normalizing_c() const;

  private:
    std::int64_t sample_tail(RngStream& stream) const;

    LatticeStepLaw law_;
    // SymmetricPareto only:
    std::vector<double> cum_;  // cum_[k-1] = sum_{j<=k} j^{-1-alpha}
    double support_sum_ = 0;   // sum over the whole (possibly truncated) support
    double tail_reject_bound_ = 0;
};

enum class SceneryKind { Rademacher, Gaussian, SymmetricParetoReal };

struct SceneryLaw {
    SceneryKind kind = SceneryKind::Rademacher;
    double index = 2.0;  // beta; forced to 2 for Rademacher/Gaussian
    double scale = 1.0;

    void validate() const;
    // scale^2 for Rademacher/Gaussian; +inf for SymmetricParetoReal (beta < 2).
    double variance() const;
    double cdf(double x) const;  // exact CDF, used by distributional tests
};

double sample_scenery_value(const SceneryLaw& law, RngStream& stream);

// Riemann zeta on (1, inf), direct summation plus Euler-Maclaurin tail.
double riemann_zeta(double s);

}  // namespace rwrs
