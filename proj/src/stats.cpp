#include "rwrs/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rwrs {

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double t = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= t) ++i;
        while (j < b.size() && b[j] <= t) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double ks_vs_cdf(std::vector<double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw std::invalid_argument("ks_vs_cdf: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, std::max(static_cast<double>(i + 1) / n - f,
                                 f - static_cast<double>(i) / n));
    }
    return d;
}

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw std::invalid_argument("quantile: empty sample");
    if (p <= 0.0) return sorted.front();
    if (p >= 1.0) return sorted.back();
    const double h = p * (static_cast<double>(sorted.size()) - 1.0);
    const auto lo = static_cast<std::size_t>(h);
    const double frac = h - static_cast<double>(lo);
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double quantile(std::vector<double> values, double p) {
    std::sort(values.begin(), values.end());
    return quantile_sorted(values, p);
}

double mean(std::span<const double> v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / static_cast<double>(v.size());
}

double variance(std::span<const double> v) {
    if (v.size() < 2) return 0.0;
    const double m = mean(v);
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return acc / (static_cast<double>(v.size()) - 1.0);
}

double kurtosis(std::span<const double> v) {
    const double m = mean(v);
    double m2 = 0.0, m4 = 0.0;
    for (double x : v) {
        const double d = x - m;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    m2 /= static_cast<double>(v.size());
    m4 /= static_cast<double>(v.size());
    return m4 / (m2 * m2);
}

LineFit ols_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("ols_line: need >= 2 paired points");
    const double mx = mean(x);
    const double my = mean(y);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

SlopeEstimate fit_log2_quantile_slope(const std::vector<double>& n_grid,
                                      const std::vector<std::vector<double>>& values_by_n,
                                      double p, int bootstrap_resamples,
                                      RngStream stream) {
    if (n_grid.size() != values_by_n.size() || n_grid.size() < 3)
        throw std::invalid_argument("fit_log2_quantile_slope: need >= 3 grid points");
    const std::size_t reps = values_by_n.front().size();

    std::vector<double> lx(n_grid.size()), ly(n_grid.size());
    SlopeEstimate est;
    for (std::size_t g = 0; g < n_grid.size(); ++g) {
        const double q = quantile(values_by_n[g], p);
        if (!(q > 0.0)) {
            est.degenerate = true;
            return est;
        }
        lx[g] = std::log2(n_grid[g]);
        ly[g] = std::log2(q);
    }
    const LineFit fit = ols_line(lx, ly);
    est.slope = fit.slope;
    est.intercept = fit.intercept;

    std::vector<double> slopes;
    slopes.reserve(static_cast<std::size_t>(bootstrap_resamples));
    std::vector<std::size_t> pick(reps);
    std::vector<double> resampled(reps), by(n_grid.size());
    for (int b = 0; b < bootstrap_resamples; ++b) {
        for (auto& idx : pick)
            idx = static_cast<std::size_t>(stream.next_u64() % reps);
        bool ok = true;
        for (std::size_t g = 0; g < n_grid.size() && ok; ++g) {
            for (std::size_t r = 0; r < reps; ++r) resampled[r] = values_by_n[g][pick[r]];
            const double q = quantile(resampled, p);
            ok = q > 0.0;
            by[g] = ok ? std::log2(q) : 0.0;
        }
        if (ok) slopes.push_back(ols_line(lx, by).slope);
    }
    if (slopes.size() >= 8) {
        std::sort(slopes.begin(), slopes.end());
        est.ci_lo = quantile_sorted(slopes, 0.025);
        est.ci_hi = quantile_sorted(slopes, 0.975);
    } else {
        est.ci_lo = est.slope;
        est.ci_hi = est.slope;
    }
    return est;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace rwrs
