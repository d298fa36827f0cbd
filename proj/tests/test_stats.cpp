#include <doctest.h>

#include <cmath>
#include <vector>

#include "rwrs/stats.hpp"

using namespace rwrs;

TEST_CASE("ks of a sample against itself is zero") {
    std::vector<double> a = {0.3, -1.0, 2.5, 0.0, 7.0};
    CHECK(ks_two_sample(a, a) == 0.0);
}

TEST_CASE("ks discriminates clearly separated scales") {
    RngStream s(1);
    std::vector<double> narrow(1000), wide(1000);
    for (double& x : narrow) x = s.normal();
    for (double& x : wide) x = 4.0 * s.normal();
    CHECK(ks_two_sample(narrow, wide) > 0.2);
}

TEST_CASE("ks against a shifted copy matches the analytic sup difference") {
    // sup_x |Phi(x) - Phi(x - 1)| = Phi(1/2) - Phi(-1/2) ~ 0.38292
    RngStream s(2);
    const int n = 10000;
    std::vector<double> a(n), b(n);
    for (double& x : a) x = s.normal();
    for (double& x : b) x = s.normal() + 1.0;
    const double ks = ks_two_sample(a, b);
    CHECK(std::abs(ks - 0.38292) < 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("ks versus an analytic cdf") {
    RngStream s(3);
    std::vector<double> sample(20000);
    for (double& x : sample) x = s.normal();
    CHECK(ks_vs_cdf(sample, [](double x) { return normal_cdf(x); }) < 0.015);
    // Against the wrong CDF the distance is the analytic separation.
    const double ks_wrong =
        ks_vs_cdf(sample, [](double x) { return normal_cdf(x - 1.0); });
    CHECK(std::abs(ks_wrong - 0.38292) < 0.03);
}

TEST_CASE("quantile interpolation") {
    std::vector<double> v = {5.0, 1.0, 3.0, 2.0, 4.0};
    CHECK(quantile(v, 0.5) == 3.0);
    CHECK(quantile(v, 0.0) == 1.0);
    CHECK(quantile(v, 1.0) == 5.0);
    CHECK(quantile(v, 0.25) == 2.0);
    CHECK(quantile({1.0, 2.0}, 0.75) == doctest::Approx(1.75));
}

TEST_CASE("ols recovers exact lines") {
    std::vector<double> x, y;
    for (int i = 1; i <= 9; ++i) {
        x.push_back(i);
        y.push_back(-2.5 * i + 0.75);
    }
    const LineFit fit = ols_line(x, y);
    CHECK(fit.slope == doctest::Approx(-2.5).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("pure power data recovers the exponent to 1e-6") {
    const double gamma = 1.75;
    std::vector<double> grid;
    std::vector<std::vector<double>> values;
    for (int e = 10; e <= 17; ++e) {
        const double n = std::exp2(e);
        grid.push_back(n);
        values.push_back(std::vector<double>(60, std::pow(n, gamma)));
    }
    const SlopeEstimate est =
        fit_log2_quantile_slope(grid, values, 0.5, 200, RngStream(4));
    CHECK_FALSE(est.degenerate);
    CHECK(std::abs(est.slope - gamma) < 1e-6);
    CHECK(est.ci_lo <= est.slope);
    CHECK(est.ci_hi >= est.slope);
}

TEST_CASE("noisy power data: slope inside bootstrap CI, CI brackets truth") {
    const double gamma = 1.5;
    RngStream s(5);
    std::vector<double> grid;
    std::vector<std::vector<double>> values;
    for (int e = 8; e <= 14; ++e) {
        const double n = std::exp2(e);
        grid.push_back(n);
        std::vector<double> reps(200);
        for (double& v : reps) v = std::pow(n, gamma) * std::exp(0.2 * s.normal());
        values.push_back(reps);
    }
    const SlopeEstimate est = fit_log2_quantile_slope(grid, values, 0.5, 300, RngStream(6));
    CHECK(std::abs(est.slope - gamma) < 0.05);
    CHECK(est.ci_lo < gamma);
    CHECK(est.ci_hi > gamma);
}

TEST_CASE("degenerate statistic is flagged") {
    std::vector<double> grid = {16.0, 32.0, 64.0};
    std::vector<std::vector<double>> values(3, std::vector<double>(60, 0.0));
    const SlopeEstimate est = fit_log2_quantile_slope(grid, values, 0.5, 50, RngStream(7));
    CHECK(est.degenerate);
}

TEST_CASE("moment helpers") {
    RngStream s(8);
    std::vector<double> z(200000);
    for (double& x : z) x = s.normal();
    CHECK(std::abs(mean(z)) < 0.01);
    CHECK(std::abs(variance(z) - 1.0) < 0.02);
    CHECK(std::abs(kurtosis(z) - 3.0) < 0.1);
}
