#include "rwrs/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rwrs/limit.hpp"

namespace rwrs {

Suite parse_suite(const std::string& name) {
    if (name == "scaling") return Suite::Scaling;
    if (name == "limit") return Suite::Limit;
    if (name == "lil") return Suite::Lil;
    if (name == "selfint") return Suite::Selfint;
    if (name == "remainder") return Suite::Remainder;
    if (name == "all") return Suite::All;
    throw std::invalid_argument("unknown suite '" + name + "'");
}

const char* to_string(Suite suite) {
    switch (suite) {
        case Suite::Scaling: return "scaling";
        case Suite::Limit: return "limit";
        case Suite::Lil: return "lil";
        case Suite::Selfint: return "selfint";
        case Suite::Remainder: return "remainder";
        case Suite::All: return "all";
    }
    return "?";
}

const char* to_string(Statistic stat) {
    switch (stat) {
        case Statistic::U: return "U";
        case Statistic::L: return "L";
        case Statistic::R: return "R";
        case Statistic::V: return "V";
    }
    return "?";
}

namespace {

double pick(const GridRecord& rec, Statistic stat) {
    switch (stat) {
        case Statistic::U: return rec.u;
        case Statistic::L: return rec.l;
        case Statistic::R: return rec.r;
        case Statistic::V: return static_cast<double>(rec.v);
    }
    return 0.0;
}

std::string format_band(double lo, double hi) {
    std::ostringstream os;
    os << "[" << lo << ", " << hi << "]";
    return os.str();
}

}  // namespace

std::vector<std::vector<double>> statistic_by_n(const std::vector<ReplicateResult>& results,
                                                Statistic stat, std::uint64_t n_min,
                                                std::vector<double>* n_grid_out) {
    if (results.empty()) throw std::invalid_argument("statistic_by_n: no results");
    const auto& grid_records = results.front().records;
    std::vector<std::vector<double>> by_n;
    if (n_grid_out) n_grid_out->clear();
    for (std::size_t g = 0; g < grid_records.size(); ++g) {
        if (grid_records[g].n < n_min) continue;
        std::vector<double> vals;
        vals.reserve(results.size());
        for (const auto& rep : results) {
            if (g >= rep.records.size() || rep.records[g].n != grid_records[g].n)
                throw std::invalid_argument("statistic_by_n: replicates disagree on grid");
            vals.push_back(std::abs(pick(rep.records[g], stat)));
        }
        by_n.push_back(std::move(vals));
        if (n_grid_out) n_grid_out->push_back(static_cast<double>(grid_records[g].n));
    }
    return by_n;
}

SlopeEstimate fit_scaling_exponent(const std::vector<ReplicateResult>& results,
                                   Statistic stat, double quantile_p,
                                   const ExperimentConfig& cfg) {
    if (results.size() < 50)
        throw std::invalid_argument("fit_scaling_exponent: need >= 50 replicates");
    std::vector<double> grid;
    const auto by_n = statistic_by_n(results, stat, cfg.fit.n_min, &grid);
    if (grid.size() < 3)
        throw std::invalid_argument("fit_scaling_exponent: need >= 3 grid points");
    RngStream boot(mix2(cfg.master_seed, kSaltBootstrap));
    return fit_log2_quantile_slope(grid, by_n, quantile_p,
                                   std::max(cfg.fit.bootstrap, 200), boot);
}

KsVerdict compare_limit_distribution(const std::vector<ReplicateResult>& results,
                                     const std::vector<double>& limit_draws,
                                     std::uint64_t n_star, double threshold,
                                     const ExperimentConfig& cfg) {
    if (cfg.alpha != 2.0 || cfg.beta != 2.0)
        throw std::invalid_argument(
            "compare_limit_distribution: requires the alpha = beta = 2 configuration");
    std::vector<double> rescaled;
    rescaled.reserve(results.size());
    const double norm = std::pow(static_cast<double>(n_star), cfg.target_u_exponent());
    for (const auto& rep : results) {
        for (const auto& rec : rep.records) {
            if (rec.n == n_star) rescaled.push_back(rec.u / norm);
        }
    }
    if (rescaled.size() < 1000 || limit_draws.size() < 1000)
        throw std::invalid_argument(
            "compare_limit_distribution: need >= 1000 values per side");
    KsVerdict verdict;
    verdict.n_sim = rescaled.size();
    verdict.n_limit = limit_draws.size();
    verdict.ks = ks_two_sample(rescaled, limit_draws);
    verdict.threshold = threshold;
    verdict.pass = verdict.ks < threshold;
    return verdict;
}

LilBandStats lil_track(const std::vector<ReplicateResult>& results, double var_xi,
                       double var_x) {
    std::vector<double> mplus, neg_mminus;
    for (const auto& rep : results) {
        if (!rep.lil) continue;
        mplus.push_back(rep.lil->mplus);
        neg_mminus.push_back(-rep.lil->mminus);
    }
    if (mplus.empty())
        throw std::invalid_argument("lil_track: no replicate carries a LIL track");
    LilBandStats out;
    out.c = std::pow(2.0, 0.25) * std::sqrt(var_xi) / (3.0 * std::pow(var_x, 0.25));
    out.median_mplus = quantile(mplus, 0.5);
    out.median_neg_mminus = quantile(neg_mminus, 0.5);
    out.symmetry_ks = ks_two_sample(mplus, neg_mminus);
    out.replicates = mplus.size();
    return out;
}

TrendVerdict remainder_decay_check(const std::vector<ReplicateResult>& results,
                                   const ExperimentConfig& cfg) {
    if (cfg.kernel.kind == KernelKind::Sum)
        throw std::invalid_argument(
            "remainder_decay_check: Sum kernel has h2 == 0, remainder is degenerate");
    if (results.size() < 2)
        throw std::invalid_argument("remainder_decay_check: need replicates");

    const double rho = cfg.remainder_exponent();
    const std::uint64_t n_min = cfg.fit.n_min;
    TrendVerdict verdict;
    const auto& grid_records = results.front().records;
    std::vector<std::vector<double>> normalized_by_g;
    std::vector<double> running_max(results.size(), 0.0);
    for (std::size_t g = 0; g < grid_records.size(); ++g) {
        const std::uint64_t n = grid_records[g].n;
        std::vector<double> vals(results.size());
        for (std::size_t r = 0; r < results.size(); ++r) {
            running_max[r] = std::max(running_max[r], std::abs(results[r].records[g].r));
            vals[r] = running_max[r] / std::pow(static_cast<double>(n), rho);
        }
        if (n < n_min) continue;
        verdict.grid_n.push_back(static_cast<double>(n));
        verdict.medians.push_back(quantile(vals, 0.5));
    }
    if (verdict.medians.size() < 3)
        throw std::invalid_argument("remainder_decay_check: need >= 3 grid points");
    for (std::size_t i = 0; i + 1 < verdict.medians.size(); ++i) {
        if (verdict.medians[i + 1] > verdict.medians[i]) {
            verdict.inversions += 1;
            verdict.worst_inversion = std::max(
                verdict.worst_inversion,
                verdict.medians[i + 1] / verdict.medians[i] - 1.0);
        }
    }
    verdict.pass = verdict.inversions <= 1 && verdict.worst_inversion <= 0.05;
    return verdict;
}

VnVerdict vn_moment_check(const std::vector<ReplicateResult>& results, double alpha) {
    if (results.empty()) throw std::invalid_argument("vn_moment_check: no results");
    const double ap = alpha > 1.0 ? alpha : 1.0;
    const auto& grid_records = results.front().records;
    std::vector<double> lx, ly1, ly2;
    for (std::size_t g = 0; g < grid_records.size(); ++g) {
        double m1 = 0.0, m2 = 0.0;
        for (const auto& rep : results) {
            const double v = static_cast<double>(rep.records[g].v);
            m1 += v;
            m2 += v * v;
        }
        m1 /= static_cast<double>(results.size());
        m2 /= static_cast<double>(results.size());
        lx.push_back(std::log2(static_cast<double>(grid_records[g].n)));
        ly1.push_back(std::log2(m1));
        ly2.push_back(std::log2(m2));
    }
    VnVerdict verdict;
    verdict.slope_mean = ols_line(lx, ly1).slope;
    verdict.slope_second = ols_line(lx, ly2).slope;
    verdict.band1_lo = 2.0 - 1.0 / ap - 0.1;
    verdict.band1_hi = 2.0 - 1.0 / ap + 0.15;
    verdict.band2_lo = 4.0 - 2.0 / ap - 0.2;
    verdict.band2_hi = 4.0 - 2.0 / ap + 0.3;
    verdict.pass_mean =
        verdict.slope_mean >= verdict.band1_lo && verdict.slope_mean <= verdict.band1_hi;
    verdict.pass_second = verdict.slope_second >= verdict.band2_lo &&
                          verdict.slope_second <= verdict.band2_hi;
    return verdict;
}

SuiteReport scaling_suite(const ExperimentConfig& cfg,
                          const std::vector<ReplicateResult>& results) {
    SuiteReport report;
    report.suite = Suite::Scaling;
    const double target = cfg.target_u_exponent();
    double lo = cfg.tol.slope_lo, hi = cfg.tol.slope_hi;
    if (lo == 0.0) lo = target - 0.15;
    if (hi == 0.0) hi = target + 0.15;

    SlopeEstimate est;
    try {
        est = fit_scaling_exponent(results, Statistic::U, cfg.fit.quantile, cfg);
    } catch (const std::invalid_argument& e) {
        report.applicable = false;
        report.refusal = e.what();
        return report;
    }
    CheckEntry entry;
    entry.name = "u_exponent";
    entry.value = est.slope;
    entry.lo = lo;
    entry.hi = hi;
    if (est.degenerate) {
        entry.pass = false;
        entry.note = "degenerate statistic: |U| quantile vanished";
    } else {
        entry.pass = est.slope >= lo && est.slope <= hi;
        std::ostringstream note;
        note << "target " << target << ", bootstrap CI [" << est.ci_lo << ", "
             << est.ci_hi << "], quantile " << cfg.fit.quantile;
        if (cfg.alpha == 1.0)
            note << "; alpha = 1: growth exponent 1 + 1/beta tested, printed "
                    "normalizer in the source carries the opposite sign";
        entry.note = note.str();
    }
    report.entries.push_back(entry);
    return report;
}

SuiteReport selfint_suite(const ExperimentConfig& cfg,
                          const std::vector<ReplicateResult>& results) {
    SuiteReport report;
    report.suite = Suite::Selfint;
    VnVerdict v;
    try {
        v = vn_moment_check(results, cfg.alpha);
    } catch (const std::invalid_argument& e) {
        report.applicable = false;
        report.refusal = e.what();
        return report;
    }
    report.entries.push_back({"v_mean_exponent", v.slope_mean, v.band1_lo, v.band1_hi,
                              v.pass_mean,
                              "target " + std::to_string(2.0 - 1.0 / cfg.alpha_prime())});
    report.entries.push_back({"v_second_moment_exponent", v.slope_second, v.band2_lo,
                              v.band2_hi, v.pass_second,
                              "target " + std::to_string(4.0 - 2.0 / cfg.alpha_prime())});
    return report;
}

SuiteReport remainder_suite(const ExperimentConfig& cfg,
                            const std::vector<ReplicateResult>& results) {
    SuiteReport report;
    report.suite = Suite::Remainder;
    if (cfg.kernel.kind == KernelKind::Sum) {
        report.applicable = false;
        report.refusal = "Sum kernel has h2 == 0; the remainder is identically zero";
        return report;
    }
    TrendVerdict v;
    try {
        v = remainder_decay_check(results, cfg);
    } catch (const std::invalid_argument& e) {
        report.applicable = false;
        report.refusal = e.what();
        return report;
    }
    CheckEntry entry;
    entry.name = "remainder_decay";
    entry.value = v.worst_inversion;
    entry.lo = 0.0;
    entry.hi = 0.05;
    entry.pass = v.pass;
    std::ostringstream note;
    note << "medians of max|R_k| / n^" << cfg.remainder_exponent() << ":";
    for (double m : v.medians) note << " " << m;
    note << "; inversions " << v.inversions << " (<= 1 allowed)";
    entry.note = note.str();
    report.entries.push_back(entry);
    return report;
}

SuiteReport limit_suite(const ExperimentConfig& cfg,
                        const std::vector<ReplicateResult>& results, int threads,
                        LimitArtifacts* artifacts) {
    SuiteReport report;
    report.suite = Suite::Limit;
    if (cfg.alpha != 2.0 || cfg.beta != 2.0) {
        report.applicable = false;
        report.refusal =
            "limit suite requires alpha = beta = 2 (the only preset with elementary "
            "scale constants)";
        return report;
    }
    const double var_x = StepSampler(cfg.step_law).variance();
    const double var_xi = cfg.scenery_law.variance();
    const double walk_scale = std::sqrt(var_x / 2.0);
    const double noise_scale = std::sqrt(var_xi / 2.0);
    const std::uint64_t key = mix2(cfg.master_seed, kSaltLimit);

    const std::vector<double> draws =
        kesten_spitzer_batch(cfg.limit.draws, cfg.alpha, cfg.beta, 1.0, cfg.limit.dt,
                             cfg.limit.dx, walk_scale, noise_scale, key, threads);
    KsVerdict ks;
    try {
        ks = compare_limit_distribution(results, draws, cfg.n_star_effective(),
                                        cfg.tol.ks_limit, cfg);
    } catch (const std::invalid_argument& e) {
        report.applicable = false;
        report.refusal = e.what();
        return report;
    }
    if (artifacts) {
        const double norm =
            std::pow(static_cast<double>(cfg.n_star_effective()), cfg.target_u_exponent());
        artifacts->rescaled.clear();
        for (const auto& rep : results) {
            for (const auto& rec : rep.records) {
                if (rec.n == cfg.n_star_effective())
                    artifacts->rescaled.push_back(rec.u / norm);
            }
        }
        artifacts->draws = draws;
    }
    CheckEntry ks_entry;
    ks_entry.name = "limit_marginal_ks";
    ks_entry.value = ks.ks;
    ks_entry.lo = 0.0;
    ks_entry.hi = ks.threshold;
    ks_entry.pass = ks.pass;
    ks_entry.note = "U_{n*}/n*^{7/4} vs Delta_1, " + std::to_string(ks.n_sim) + " vs " +
                    std::to_string(ks.n_limit) + " samples";
    report.entries.push_back(ks_entry);

    const std::vector<double> base = kesten_spitzer_batch(
        cfg.limit.refine_draws, cfg.alpha, cfg.beta, 1.0, cfg.limit.dt, cfg.limit.dx,
        walk_scale, noise_scale, mix2(key, 1), threads);
    const std::vector<double> refined = kesten_spitzer_batch(
        cfg.limit.refine_draws, cfg.alpha, cfg.beta, 1.0, cfg.limit.dt / 2.0,
        cfg.limit.dx / 2.0, walk_scale, noise_scale, mix2(key, 2), threads);
    const double q_base = quantile(base, 0.9);
    const double q_ref = quantile(refined, 0.9);
    CheckEntry refine;
    refine.name = "delta_refinement_shift";
    refine.value = std::abs(q_ref - q_base) / std::abs(q_base);
    refine.lo = 0.0;
    refine.hi = cfg.tol.refine_shift;
    refine.pass = refine.value < cfg.tol.refine_shift;
    refine.note = "0.9-quantile under (dt, dx) halving: " + std::to_string(q_base) +
                  " -> " + std::to_string(q_ref);
    report.entries.push_back(refine);
    return report;
}

SuiteReport lil_suite(const ExperimentConfig& cfg,
                      const std::vector<ReplicateResult>& results) {
    SuiteReport report;
    report.suite = Suite::Lil;
    if (cfg.alpha != 2.0 || cfg.beta != 2.0) {
        report.applicable = false;
        report.refusal = "lil suite requires alpha = beta = 2";
        return report;
    }
    if (!cfg.lil.enabled) {
        report.applicable = false;
        report.refusal = "lil suite requires per-k tracking ([lil] enabled = true)";
        return report;
    }
    const bool any_track =
        std::any_of(results.begin(), results.end(),
                    [](const ReplicateResult& r) { return r.lil.has_value(); });
    if (!any_track) {
        report.applicable = false;
        report.refusal =
            "no LIL tracks in the ingested results (re-simulate with [lil] enabled)";
        return report;
    }
    const double var_x = StepSampler(cfg.step_law).variance();
    const double var_xi = cfg.scenery_law.variance();
    const LilBandStats stats = lil_track(results, var_xi, var_x);

    CheckEntry band;
    band.name = "lil_median_sup";
    band.value = stats.median_mplus;
    band.lo = cfg.tol.lil_band_lo * stats.c;
    band.hi = cfg.tol.lil_band_hi * stats.c;
    band.pass = stats.median_mplus >= band.lo && stats.median_mplus <= band.hi;
    std::ostringstream note;
    note << "c = " << stats.c << ", median(-M-) = " << stats.median_neg_mminus
         << ", replicates " << stats.replicates
         << "; sanity band, not a verification of the a.s. limit";
    band.note = note.str();
    report.entries.push_back(band);

    CheckEntry sym;
    sym.name = "lil_symmetry_ks";
    sym.value = stats.symmetry_ks;
    sym.lo = 0.0;
    sym.hi = cfg.tol.lil_symmetry_ks;
    sym.pass = stats.symmetry_ks < cfg.tol.lil_symmetry_ks;
    sym.note = "KS between M+ and -M- across replicates";
    report.entries.push_back(sym);
    return report;
}

std::vector<SuiteReport> run_suites(const ExperimentConfig& cfg,
                                    const std::vector<ReplicateResult>& results,
                                    Suite suite, int threads) {
    std::vector<SuiteReport> reports;
    auto want = [&](Suite s) { return suite == Suite::All || suite == s; };
    if (want(Suite::Scaling)) reports.push_back(scaling_suite(cfg, results));
    if (want(Suite::Selfint)) reports.push_back(selfint_suite(cfg, results));
    if (want(Suite::Remainder)) reports.push_back(remainder_suite(cfg, results));
    if (want(Suite::Limit)) reports.push_back(limit_suite(cfg, results, threads));
    if (want(Suite::Lil)) reports.push_back(lil_suite(cfg, results));
    return reports;
}

}  // namespace rwrs
