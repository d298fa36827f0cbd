#pragma once

// Statistical harness turning replicate results into pass/fail evidence:
// scaling-exponent fits, limit-law comparison, the iterated-logarithm band,
// self-intersection moment slopes and remainder decay. Every verdict cites
// the tolerance it was judged against.

#include <string>
#include <vector>

#include "rwrs/config.hpp"
#include "rwrs/runner.hpp"
#include "rwrs/stats.hpp"

namespace rwrs {

enum class Statistic { U, L, R, V };
enum class Suite { Scaling, Limit, Lil, Selfint, Remainder, All };

Suite parse_suite(const std::string& name);
const char* to_string(Suite suite);
const char* to_string(Statistic stat);

struct CheckEntry {
    std::string name;
    double value = 0.0;
    double lo = 0.0;  // tolerance interval the verdict cites
    double hi = 0.0;
    bool pass = false;
    std::string note;
};

struct SuiteReport {
    Suite suite = Suite::Scaling;
    bool applicable = true;
    std::string refusal;  // named constraint when not applicable
    std::vector<CheckEntry> entries;
    bool pass() const {
        if (!applicable) return false;
        for (const auto& e : entries)
            if (!e.pass) return false;
        return true;
    }
};

// |statistic| per replicate at each grid point with n >= n_min.
std::vector<std::vector<double>> statistic_by_n(const std::vector<ReplicateResult>& results,
                                                Statistic stat, std::uint64_t n_min,
                                                std::vector<double>* n_grid_out);

// OLS of log2(quantile of |statistic|) on log2 n with replicate-bootstrap CI.
// Requires >= 3 grid points and >= 50 replicates; flags the fit degenerate
// when the statistic vanishes (e.g. R under the Sum kernel).
SlopeEstimate fit_scaling_exponent(const std::vector<ReplicateResult>& results,
                                   Statistic stat, double quantile_p,
                                   const ExperimentConfig& cfg);

struct KsVerdict {
    double ks = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::size_t n_sim = 0;
    std::size_t n_limit = 0;
};

// Two-sample KS between U_{n*} / n*^{2 - 1/alpha + 1/(alpha beta)} across
// replicates and simulated Delta_1 draws; alpha = beta = 2 only, >= 1000
// values per side.
KsVerdict compare_limit_distribution(const std::vector<ReplicateResult>& results,
                                     const std::vector<double>& limit_draws,
                                     std::uint64_t n_star, double threshold,
                                     const ExperimentConfig& cfg);

struct LilBandStats {
    double c = 0.0;  // 2^{1/4} var(xi)^{1/2} / (3 var(X)^{1/4})
    double median_mplus = 0.0;
    double median_neg_mminus = 0.0;
    double symmetry_ks = 0.0;
    std::size_t replicates = 0;
};

LilBandStats lil_track(const std::vector<ReplicateResult>& results, double var_xi,
                       double var_x);

struct TrendVerdict {
    std::vector<double> grid_n;
    std::vector<double> medians;  // median_r max_{k<=n, k in grid} |R_k| / n^rho
    int inversions = 0;
    double worst_inversion = 0.0;  // largest relative increase
    bool pass = false;
};

// Medians of the normalized running-max remainder must be nonincreasing up to
// one inversion of <= 5%. Refused for kernels with h2 == 0.
TrendVerdict remainder_decay_check(const std::vector<ReplicateResult>& results,
                                   const ExperimentConfig& cfg);

struct VnVerdict {
    double slope_mean = 0.0;       // log2 mean V_n vs log2 n
    double slope_second = 0.0;     // log2 mean V_n^2 vs log2 n
    double band1_lo = 0.0, band1_hi = 0.0;
    double band2_lo = 0.0, band2_hi = 0.0;
    bool pass_mean = false;
    bool pass_second = false;
};

// Self-intersection moment slopes: targets 2 - 1/alpha' and 4 - 2/alpha', asymmetric
// slack absorbing the log factors.
VnVerdict vn_moment_check(const std::vector<ReplicateResult>& results, double alpha);

// Samples produced while running the limit suite; kept for plotting.
struct LimitArtifacts {
    std::vector<double> rescaled;  // U_{n*} / n*^{7/4} per replicate
    std::vector<double> draws;     // simulated Delta_1
};

SuiteReport scaling_suite(const ExperimentConfig& cfg,
                          const std::vector<ReplicateResult>& results);
SuiteReport selfint_suite(const ExperimentConfig& cfg,
                          const std::vector<ReplicateResult>& results);
SuiteReport remainder_suite(const ExperimentConfig& cfg,
                            const std::vector<ReplicateResult>& results);
SuiteReport limit_suite(const ExperimentConfig& cfg,
                        const std::vector<ReplicateResult>& results, int threads,
                        LimitArtifacts* artifacts = nullptr);
SuiteReport lil_suite(const ExperimentConfig& cfg,
                      const std::vector<ReplicateResult>& results);

// Suite::All expands to every suite; inapplicable ones carry their refusal.
std::vector<SuiteReport> run_suites(const ExperimentConfig& cfg,
                                    const std::vector<ReplicateResult>& results,
                                    Suite suite, int threads);

}  // namespace rwrs
