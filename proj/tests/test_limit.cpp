#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "rwrs/limit.hpp"
#include "rwrs/stats.hpp"

using namespace rwrs;

TEST_CASE("levy path endpoints: gaussian case variance") {
    // alpha = 2, scale s: increments stable(2) of scale s dt^{1/2}, so
    // Var S*_1 = 2 s^2.
    RngStream s(1);
    const int paths = 20000;
    std::vector<double> endpoints(paths);
    for (double& e : endpoints) {
        const LevyPathGrid p = simulate_levy_path(2.0, 1.0, 2e-3, s, 1.0);
        e = p.values.back();
    }
    CHECK(std::abs(variance(endpoints) - 2.0) / 2.0 < 0.03);
}

TEST_CASE("degenerate horizons") {
    RngStream s(2);
    const LevyPathGrid p = simulate_levy_path(1.5, 0.0, 1e-3, s);
    CHECK(p.values.size() == 1);
    CHECK(p.values[0] == 0.0);
    CHECK_THROWS_AS(simulate_levy_path(0.0, 1.0, 1e-3, s), std::invalid_argument);
    CHECK_THROWS_AS(simulate_levy_path(1.5, 1.0, 0.0, s), std::invalid_argument);
}

TEST_CASE("self-similarity: S*_2 vs 2^{1/alpha} S*_1 at alpha = 1.5") {
    RngStream s(3);
    const double alpha = 1.5;
    const int paths = 10000;
    std::vector<double> at2(paths), scaled1(paths);
    for (int i = 0; i < paths; ++i) {
        at2[i] = simulate_levy_path(alpha, 2.0, 5e-3, s).values.back();
        scaled1[i] = std::exp2(1.0 / alpha) *
                     simulate_levy_path(alpha, 1.0, 5e-3, s).values.back();
    }
    CHECK(ks_two_sample(at2, scaled1) < 0.02);
}

TEST_CASE("local time mass conservation") {
    RngStream s(4);
    const LevyPathGrid p = simulate_levy_path(1.8, 1.0, 1e-4, s);
    const LocalTimeGrid lt = local_time(p, 1.0, 0.01);
    CHECK(std::abs(lt.mass() - 1.0) < 1e-12);
    CHECK_THROWS_AS(local_time(p, 2.0, 0.01), std::invalid_argument);
    for (double v : lt.values) CHECK(v >= 0.0);
}

TEST_CASE("constant path concentrates in one bin") {
    LevyPathGrid p;
    p.dt = 0.01;
    p.t_max = 1.0;
    p.values.assign(101, 0.0);
    const LocalTimeGrid lt = local_time(p, 1.0, 0.05);
    int occupied = 0;
    double top = 0.0;
    for (double v : lt.values) {
        if (v > 0.0) {
            ++occupied;
            top = v;
        }
    }
    CHECK(occupied == 1);
    CHECK(top == doctest::Approx(1.0 / 0.05));
}

TEST_CASE("brownian expected local time at the origin") {
    // Var S*_1 = 1 with scale 1/sqrt(2); E T_1(0) = sqrt(2/pi) ~ 0.79788.
    RngStream s(5);
    const double dx = 0.02;
    const int paths = 2000;
    double acc = 0.0;
    for (int i = 0; i < paths; ++i) {
        const LevyPathGrid p = simulate_levy_path(2.0, 1.0, 1e-3, s, 1.0 / std::sqrt(2.0));
        const LocalTimeGrid lt = local_time(p, 1.0, dx);
        const auto bin = static_cast<std::size_t>((0.0 - lt.x_min) / dx);
        acc += lt.values[bin];
    }
    acc /= paths;
    CHECK(std::abs(acc - std::sqrt(2.0 / 3.14159265358979)) < 0.08);
}

TEST_CASE("kesten-spitzer draw basics") {
    RngStream s(6);
    const LimitSample zero = kesten_spitzer_sample(2.0, 2.0, 0.0, 1e-3, 0.01, s);
    CHECK(zero.value == 0.0);
    CHECK_THROWS_AS(kesten_spitzer_sample(0.9, 2.0, 1.0, 1e-3, 0.01, s),
                    std::invalid_argument);
    CHECK_THROWS_AS(kesten_spitzer_sample(2.0, 0.9, 1.0, 1e-3, 0.01, s),
                    std::invalid_argument);
}

TEST_CASE("delta draws are leptokurtic gaussian mixtures at alpha = beta = 2") {
    RngStream s(7);
    const int draws = 10000;
    std::vector<double> sample(draws);
    for (double& v : sample)
        v = kesten_spitzer_sample(2.0, 2.0, 1.0, 1e-3, 0.01, s).value;
    CHECK(std::abs(mean(sample)) < 0.05);
    CHECK(kurtosis(sample) > 3.0);
}

TEST_CASE("delta self-similarity exponent at alpha = beta = 2") {
    // q_{0.9}(Delta_2) / q_{0.9}(Delta_1) ~ 2^{3/4}.
    RngStream s(8);
    const int draws = 3000;
    std::vector<double> d1(draws), d2(draws);
    for (int i = 0; i < draws; ++i) {
        d1[i] = kesten_spitzer_sample(2.0, 2.0, 1.0, 1e-3, 0.01, s).value;
        d2[i] = kesten_spitzer_sample(2.0, 2.0, 2.0, 2e-3, 0.01, s).value;
    }
    const double ratio = quantile(d2, 0.9) / quantile(d1, 0.9);
    CHECK(std::abs(ratio / std::exp2(0.75) - 1.0) < 0.1);
}

TEST_CASE("beta levy samples") {
    RngStream s(9);
    CHECK(beta_levy_sample(2.0, 0.0, s).value == 0.0);
    const int n = 100000;
    std::vector<double> draws(n);
    for (double& v : draws) v = beta_levy_sample(2.0, 1.0, s, 1.0 / std::sqrt(2.0)).value;
    CHECK(ks_vs_cdf(draws, [](double x) { return normal_cdf(x); }) < 0.01);

    // characteristic function of the beta = 1.5 draw at t = 1: scale t^{1/beta}
    std::vector<double> heavy(n);
    for (double& v : heavy) v = beta_levy_sample(1.5, 1.0, s).value;
    double ecf = 0.0;
    for (double v : heavy) ecf += std::cos(v);
    ecf /= n;
    CHECK(std::abs(ecf - std::exp(-1.0)) < 0.02);
}

TEST_CASE("alpha-one constant formula") {
    CHECK(alpha_one_constant(2.0, 1.0) == doctest::Approx(0.6366197723675814).epsilon(1e-12));
    CHECK(alpha_one_constant(1.5, 2.0) == doctest::Approx(0.5303300858899106).epsilon(1e-6));
    CHECK(alpha_one_constant(1.0 + 1e-9, 5.0) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_THROWS_AS(alpha_one_constant(2.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(alpha_one_constant(1.5, 0.0), std::invalid_argument);
}

TEST_CASE("b estimator") {
    SUBCASE("no returns means b = 0") {
        CHECK(b_from_counts({0, 0, 0, 0}, 1.5) == 0.0);
    }
    SUBCASE("beta = 2 reduces to the square root of the mean count") {
        const std::vector<std::uint64_t> counts = {0, 1, 4, 2, 3, 0, 5};
        double m = 0.0;
        for (auto c : counts) m += static_cast<double>(c);
        m /= static_cast<double>(counts.size());
        CHECK(b_from_counts(counts, 2.0) == doctest::Approx(std::sqrt(m)));
    }
    SUBCASE("horizon stabilization for a transient walk") {
        RngStream s(10);
        const LatticeStepLaw law{StepKind::SymmetricPareto, 0.8, 0.2, 0};
        const BEstimate est = estimate_b_constant(law, 2.0, 40000, 400, s);
        CHECK(est.value > 0.0);
        CHECK(est.std_err > 0.0);
        const double combined =
            std::sqrt(est.std_err * est.std_err + est.std_err_half * est.std_err_half);
        CHECK(std::abs(est.value - est.value_half_horizon) < 2.0 * combined);
    }
    SUBCASE("recurrent regime refused") {
        RngStream s(11);
        CHECK_THROWS_AS(
            estimate_b_constant({StepKind::LazySimple, 2.0, 0.5, 0}, 2.0, 100, 10, s),
            std::invalid_argument);
    }
}

TEST_CASE("return counting matches a direct replay") {
    const StepSampler sampler({StepKind::SymmetricPareto, 0.8, 0.2, 0});
    RngStream a(12), b(12);
    const std::uint64_t horizon = 5000;
    const std::uint64_t counted = count_returns_to_origin(sampler, horizon, a);
    std::int64_t pos = 0;
    std::uint64_t expected = 0;
    for (std::uint64_t i = 0; i < horizon; ++i) {
        pos += sampler.sample(b);
        if (pos == 0) ++expected;
    }
    CHECK(counted == expected);
}
