#include "rwrs/limit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rwrs/stats.hpp"

namespace rwrs {

double LocalTimeGrid::mass() const {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc * dx;
}

LevyPathGrid simulate_levy_path(double alpha, double t_max, double dt,
                                RngStream& stream, double scale) {
    if (!(alpha > 0.0) || !(alpha <= 2.0))
        throw std::invalid_argument("simulate_levy_path: alpha must be in (0, 2]");
    if (!(dt > 0.0)) throw std::invalid_argument("simulate_levy_path: dt must be positive");
    if (t_max < 0.0) throw std::invalid_argument("simulate_levy_path: t_max < 0");

    LevyPathGrid path;
    path.t_max = t_max;
    const auto steps = static_cast<std::uint64_t>(std::llround(t_max / dt));
    if (steps == 0) {
        path.dt = dt;
        path.values = {0.0};
        return path;
    }
    path.dt = t_max / static_cast<double>(steps);
    path.values.resize(steps + 1);
    path.values[0] = 0.0;
    const StableParams inc{alpha, 0.0, scale * std::pow(path.dt, 1.0 / alpha), 0.0};
    for (std::uint64_t k = 1; k <= steps; ++k)
        path.values[k] = path.values[k - 1] + sample_stable(inc, stream);
    return path;
}

LocalTimeGrid local_time(const LevyPathGrid& path, double t, double dx) {
    if (!(dx > 0.0)) throw std::invalid_argument("local_time: dx must be positive");
    if (t > path.t_max * (1.0 + 1e-12))
        throw std::invalid_argument("local_time: t exceeds path horizon");
    LocalTimeGrid grid;
    grid.dx = dx;
    const auto points = static_cast<std::uint64_t>(std::llround(t / path.dt));
    grid.t = static_cast<double>(points) * path.dt;
    if (points == 0) {
        grid.x_min = 0.0;
        return grid;
    }
    double lo = 0.0, hi = 0.0;
    for (std::uint64_t k = 0; k < points; ++k) {
        lo = std::min(lo, path.values[k]);
        hi = std::max(hi, path.values[k]);
    }
    // Align bin edges with 0 so the positive/negative split is exact.
    const auto first_bin = static_cast<std::int64_t>(std::floor(lo / dx)) - 1;
    const auto last_bin = static_cast<std::int64_t>(std::floor(hi / dx)) + 1;
    grid.x_min = static_cast<double>(first_bin) * dx;
    grid.values.assign(static_cast<std::size_t>(last_bin - first_bin + 1), 0.0);
    const double weight = path.dt / dx;
    for (std::uint64_t k = 0; k < points; ++k) {
        const auto bin = static_cast<std::int64_t>(std::floor(path.values[k] / dx)) - first_bin;
        grid.values[static_cast<std::size_t>(bin)] += weight;
    }
    return grid;
}

LimitSample kesten_spitzer_sample(double alpha, double beta, double t, double dt,
                                  double dx, RngStream& stream,
                                  double walk_scale, double noise_scale) {
    if (!(alpha > 1.0) || !(alpha <= 2.0))
        throw std::invalid_argument("kesten_spitzer_sample: requires alpha in (1, 2]");
    if (!(beta > 1.0) || !(beta <= 2.0))
        throw std::invalid_argument("kesten_spitzer_sample: requires beta in (1, 2]");
    if (t == 0.0) return {0.0, 0.0, LimitRegime::KestenSpitzer};

    RngStream path_stream = stream.split(1);
    RngStream plus_stream = stream.split(2);
    RngStream minus_stream = stream.split(3);

    const LevyPathGrid path = simulate_levy_path(alpha, t, dt, path_stream, walk_scale);
    const LocalTimeGrid lt = local_time(path, t, dx);

    const StableParams noise{beta, 0.0, noise_scale * std::pow(dx, 1.0 / beta), 0.0};
    double acc = 0.0;
    for (std::size_t k = 0; k < lt.values.size(); ++k) {
        if (lt.values[k] == 0.0) continue;
        const double left_edge = lt.x_min + static_cast<double>(k) * lt.dx;
        // Bin edges are aligned with 0; bins at left_edge >= 0 sit on the
        // positive half-line (this includes the bin containing 0).
        RngStream& side = left_edge >= 0.0 ? plus_stream : minus_stream;
        acc += lt.values[k] * sample_stable(noise, side);
    }
    return {t, acc, LimitRegime::KestenSpitzer};
}

LimitSample beta_levy_sample(double beta, double t, RngStream& stream, double scale) {
    if (!(beta > 1.0) || !(beta <= 2.0))
        throw std::invalid_argument("beta_levy_sample: requires beta in (1, 2]");
    if (t < 0.0) throw std::invalid_argument("beta_levy_sample: t < 0");
    const LimitRegime regime = LimitRegime::AlphaBelowOne;
    if (t == 0.0) return {0.0, 0.0, regime};
    const StableParams params{beta, 0.0, scale * std::pow(t, 1.0 / beta), 0.0};
    return {t, sample_stable(params, stream), regime};
}

double alpha_one_constant(double beta, double a) {
    if (!(beta > 1.0) || !(beta <= 2.0))
        throw std::invalid_argument("alpha_one_constant: beta must be in (1, 2]");
    if (!(a > 0.0)) throw std::invalid_argument("alpha_one_constant: a must be positive");
    constexpr double pi = 3.14159265358979323846;
    return std::tgamma(beta + 1.0) / std::pow(a * pi, beta - 1.0);
}

std::uint64_t count_returns_to_origin(const StepSampler& sampler, std::uint64_t horizon,
                                      RngStream& stream) {
    std::int64_t pos = 0;
    std::uint64_t returns = 0;
    for (std::uint64_t i = 0; i < horizon; ++i) {
        pos += sampler.sample(stream);
        if (pos == 0) ++returns;
    }
    return returns;
}

double b_from_counts(const std::vector<std::uint64_t>& counts, double beta) {
    if (counts.empty()) throw std::invalid_argument("b_from_counts: no counts");
    double acc = 0.0;
    for (std::uint64_t c : counts) {
        if (c > 0) acc += std::pow(static_cast<double>(c), beta - 1.0);
    }
    return std::pow(acc / static_cast<double>(counts.size()), 1.0 / beta);
}

BEstimate estimate_b_constant(const LatticeStepLaw& step_law, double beta,
                              std::uint64_t horizon, std::uint32_t replicates,
                              RngStream& stream) {
    if (!(step_law.index < 1.0))
        throw std::invalid_argument(
            "estimate_b_constant: requires alpha < 1 (transient walk)");
    if (!(beta > 1.0) || !(beta <= 2.0))
        throw std::invalid_argument("estimate_b_constant: beta must be in (1, 2]");
    if (replicates == 0 || horizon == 0)
        throw std::invalid_argument("estimate_b_constant: empty budget");

    const StepSampler sampler(step_law);
    std::vector<std::uint64_t> full(replicates), half(replicates);
    for (std::uint32_t r = 0; r < replicates; ++r) {
        RngStream walk_stream = stream.split(mix2(kSaltEstimateB, r));
        std::int64_t pos = 0;
        std::uint64_t returns = 0, returns_half = 0;
        for (std::uint64_t i = 1; i <= horizon; ++i) {
            pos += sampler.sample(walk_stream);
            if (pos == 0) {
                ++returns;
                if (i <= horizon / 2) ++returns_half;
            }
        }
        full[r] = returns;
        half[r] = returns_half;
    }

    auto bootstrap_se = [&](const std::vector<std::uint64_t>& counts) {
        RngStream boot(mix2(stream.key(), kSaltBootstrap));
        std::vector<double> estimates;
        std::vector<std::uint64_t> resampled(counts.size());
        for (int b = 0; b < 400; ++b) {
            for (auto& c : resampled)
                c = counts[static_cast<std::size_t>(boot.next_u64() % counts.size())];
            estimates.push_back(b_from_counts(resampled, beta));
        }
        return std::sqrt(variance(estimates));
    };

    BEstimate est;
    est.value = b_from_counts(full, beta);
    est.std_err = bootstrap_se(full);
    est.value_half_horizon = b_from_counts(half, beta);
    est.std_err_half = bootstrap_se(half);
    est.horizon = horizon;
    est.replicates = replicates;
    return est;
}

}  // namespace rwrs
