#pragma once

// Small statistics toolbox: two-sample / vs-CDF Kolmogorov-Smirnov
// distances, interpolated quantiles, moments, and least-squares line fits
// with replicate bootstrap used by the log-log exponent estimates.

#include <functional>
#include <span>
#include <vector>

#include "rwrs/rng.hpp"

namespace rwrs {

// sup_x |F_a(x) - F_b(x)| between two empirical CDFs.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// sup over sample points of |F_n(x) - F(x)| (both one-sided gaps checked).
double ks_vs_cdf(std::vector<double> sample, const std::function<double(double)>& cdf);

// Linearly interpolated quantile (type 7); p in [0, 1].
double quantile(std::vector<double> values, double p);
double quantile_sorted(std::span<const double> sorted, double p);

double mean(std::span<const double> v);
double variance(std::span<const double> v);       // unbiased
double kurtosis(std::span<const double> v);  // E[(x-m)^4]/sd^4

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

LineFit ols_line(std::span<const double> x, std::span<const double> y);

struct SlopeEstimate {
    double slope = 0.0;
    double intercept = 0.0;
    double ci_lo = 0.0;  // bootstrap percentile CI
    double ci_hi = 0.0;
    bool degenerate = false;  // statistic vanished at some grid point
};

// OLS slope of log2(quantile_p of |values|) on log2(n) with a replicate
// bootstrap CI. values_by_n[g][r] = |statistic| of replicate r at grid point g.
SlopeEstimate fit_log2_quantile_slope(const std::vector<double>& n_grid,
                                      const std::vector<std::vector<double>>& values_by_n,
                                      double p, int bootstrap_resamples,
                                      RngStream stream);

double normal_cdf(double x);

}  // namespace rwrs
