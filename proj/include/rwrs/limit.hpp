#pragma once

// Simulation of the limit objects: an alpha-stable Levy path on a time grid,
// its binned local time, the Kesten-Spitzer variable
// Delta_t = int T_t(x) dZ_+(x) + int T_t(-x) dZ_-(x) for alpha > 1, the
// beta-stable marginal for alpha <= 1 with its explicit constants.

#include <cstdint>
#include <vector>

#include "rwrs/rng.hpp"
#include "rwrs/stable.hpp"

namespace rwrs {

struct LevyPathGrid {
    double dt = 0.0;     // effective step, t_max / steps
    double t_max = 0.0;
    std::vector<double> values;  // values[k] = S*_{k dt}; values[0] = 0
};

struct LocalTimeGrid {
    double dx = 0.0;
    double x_min = 0.0;  // left edge of bin 0
    double t = 0.0;
    std::vector<double> values;  // T_t at each bin, occupation mass / dx
    double mass() const;         // dx * sum values; equals t up to rounding
};

enum class LimitRegime { KestenSpitzer, AlphaOne, AlphaBelowOne };

struct LimitSample {
    double t = 0.0;
    double value = 0.0;
    LimitRegime regime = LimitRegime::KestenSpitzer;
};

// Path with iid stable(alpha) increments of scale `scale * dt^{1/alpha}`.
// The step count is round(t_max / dt), re-deriving dt so the grid lands on
// t_max exactly.
LevyPathGrid simulate_levy_path(double alpha, double t_max, double dt,
                                RngStream& stream, double scale = 1.0);

// Binned occupation density at time t (t snapped to the path grid): each of
// the first round(t/dt) left endpoints contributes dt to its bin, divided by
// dx. The window always covers the path.
LocalTimeGrid local_time(const LevyPathGrid& path, double t, double dx);

// One draw of Delta_t: local time of a fresh path integrated against iid
// stable(beta) bin noises of scale `noise_scale * dx^{1/beta}`, with
// independent noises on the two half-lines (the bin containing 0 counts as
// positive side). Requires alpha > 1 and beta > 1.
LimitSample kesten_spitzer_sample(double alpha, double beta, double t, double dt,
                                  double dx, RngStream& stream,
                                  double walk_scale = 1.0, double noise_scale = 1.0);

// One stable(beta) draw of scale `scale * t^{1/beta}`.
LimitSample beta_levy_sample(double beta, double t, RngStream& stream,
                             double scale = 1.0);

// The alpha = 1 regime constant Gamma(beta + 1) / (a pi)^{beta - 1}.
double alpha_one_constant(double beta, double a);

struct BEstimate {
    double value = 0.0;
    double std_err = 0.0;
    double value_half_horizon = 0.0;
    double std_err_half = 0.0;
    std::uint64_t horizon = 0;
    std::uint32_t replicates = 0;
};

// Number of indices 1 <= i <= horizon with S_i = 0.
std::uint64_t count_returns_to_origin(const StepSampler& sampler, std::uint64_t horizon,
                                      RngStream& stream);

// (mean of counts^{beta-1})^{1/beta}; the Monte Carlo estimator behind b.
double b_from_counts(const std::vector<std::uint64_t>& counts, double beta);

// b = (E |#returns to 0|^{beta-1})^{1/beta} for a transient walk (alpha < 1),
// horizon-truncated, with bootstrap standard errors and a half-horizon
// stabilization diagnostic.
BEstimate estimate_b_constant(const LatticeStepLaw& step_law, double beta,
                              std::uint64_t horizon, std::uint32_t replicates,
                              RngStream& stream);

}  // namespace rwrs
