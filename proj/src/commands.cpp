#include "rwrs/commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>

#include <json.hpp>

#include "rwrs/io.hpp"
#include "rwrs/limit.hpp"
#include "rwrs/version.hpp"

namespace rwrs {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::optional<ExperimentConfig> load_config(const CommandOptions& opts) {
    try {
        ExperimentConfig cfg = load_config_file(opts.config_path);
        if (const char* env_seed = std::getenv("RWRS_SEED")) {
            cfg.master_seed = std::strtoull(env_seed, nullptr, 10);
            std::fprintf(stderr, "note: RWRS_SEED overrides master_seed -> %llu\n",
                         static_cast<unsigned long long>(cfg.master_seed));
        }
        return cfg;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error in %s:\n%s\n", opts.config_path.c_str(),
                     e.what());
        return std::nullopt;
    }
}

int effective_threads(const CommandOptions& opts, const ExperimentConfig& cfg) {
    return opts.threads > 0 ? opts.threads : cfg.threads;
}

// Simulates (or ingests) the replicate results and persists the data files.
// Returns the list of written files for the manifest.
struct ProducedResults {
    std::vector<ReplicateResult> results;
    std::vector<fs::path> outputs;
};

std::optional<ProducedResults> produce_results(const CommandOptions& opts,
                                               const ExperimentConfig& cfg) {
    ProducedResults out;
    if (!opts.ingest.empty()) {
        std::vector<std::string> warnings;
        try {
            out.results = records_from_csv(read_file(opts.ingest), &warnings);
            const fs::path lil_path = fs::path(opts.ingest).parent_path() / "lil.csv";
            if (fs::exists(lil_path)) lil_from_csv(read_file(lil_path), out.results);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "ingest error: %s\n", e.what());
            return std::nullopt;
        }
        for (const std::string& w : warnings)
            std::fprintf(stderr, "ingest warning: %s\n", w.c_str());
        if (out.results.size() != cfg.replicates)
            std::fprintf(stderr,
                         "note: ingested %zu replicates, config says %u; using the CSV\n",
                         out.results.size(), cfg.replicates);
        return out;
    }

    out.results = run_replicates(cfg, effective_threads(opts, cfg));
    const fs::path dir(opts.out_dir);
    const fs::path records_path = dir / "records.csv";
    write_file_atomic(records_path, records_to_csv(out.results));
    out.outputs.push_back(records_path);
    if (cfg.lil.enabled) {
        const fs::path lil_path = dir / "lil.csv";
        write_file_atomic(lil_path, lil_to_csv(out.results));
        out.outputs.push_back(lil_path);
    }
    return out;
}

void write_manifest(const CommandOptions& opts, const ExperimentConfig& cfg,
                    const std::vector<fs::path>& outputs, const std::string& started_at) {
    const fs::path path = fs::path(opts.out_dir) / "manifest.json";
    write_file_atomic(path, manifest_json(cfg, outputs, started_at, iso8601_utc_now()));
}

void write_plots(const CommandOptions& opts, const ExperimentConfig& cfg,
                 const std::vector<ReplicateResult>& results,
                 const std::vector<SuiteReport>& reports, const LimitArtifacts& limit_art,
                 std::vector<fs::path>& outputs) {
    const fs::path dir = fs::path(opts.out_dir) / "plots";
    for (const SuiteReport& report : reports) {
        if (!report.applicable) continue;
        switch (report.suite) {
            case Suite::Scaling: {
                std::vector<double> grid;
                const auto by_n = statistic_by_n(results, Statistic::U, cfg.fit.n_min, &grid);
                std::vector<double> lx, ly;
                for (std::size_t g = 0; g < grid.size(); ++g) {
                    lx.push_back(std::log2(grid[g]));
                    ly.push_back(std::log2(quantile(by_n[g], cfg.fit.quantile)));
                }
                const LineFit fit = ols_line(lx, ly);
                const fs::path p = dir / "scaling_fit.svg";
                write_file_atomic(p, svg_loglog_fit(lx, ly, fit.slope, fit.intercept,
                                                    "log2 median |U_n| vs log2 n"));
                outputs.push_back(p);
                break;
            }
            case Suite::Selfint: {
                std::vector<double> lx, ly;
                for (std::size_t g = 0; g < results.front().records.size(); ++g) {
                    double m1 = 0.0;
                    for (const auto& rep : results)
                        m1 += static_cast<double>(rep.records[g].v);
                    m1 /= static_cast<double>(results.size());
                    lx.push_back(std::log2(static_cast<double>(results.front().records[g].n)));
                    ly.push_back(std::log2(m1));
                }
                const LineFit fit = ols_line(lx, ly);
                const fs::path p = dir / "selfint_fit.svg";
                write_file_atomic(p, svg_loglog_fit(lx, ly, fit.slope, fit.intercept,
                                                    "log2 mean V_n vs log2 n"));
                outputs.push_back(p);
                break;
            }
            case Suite::Limit: {
                if (limit_art.rescaled.empty()) break;
                const fs::path p = dir / "limit_cdf.svg";
                write_file_atomic(p, svg_cdf_overlay(limit_art.rescaled, limit_art.draws,
                                                     "rescaled U_{n*} vs Delta_1"));
                outputs.push_back(p);
                break;
            }
            case Suite::Lil: {
                std::vector<double> mplus, neg_mminus;
                for (const auto& rep : results) {
                    if (!rep.lil) continue;
                    mplus.push_back(rep.lil->mplus);
                    neg_mminus.push_back(-rep.lil->mminus);
                }
                const double var_x = StepSampler(cfg.step_law).variance();
                const LilBandStats stats =
                    lil_track(results, cfg.scenery_law.variance(), var_x);
                const fs::path p = dir / "lil_band.svg";
                write_file_atomic(
                    p, svg_lil_band(mplus, neg_mminus, stats.c,
                                    cfg.tol.lil_band_lo * stats.c,
                                    cfg.tol.lil_band_hi * stats.c, "LIL sup/inf envelope"));
                outputs.push_back(p);
                break;
            }
            case Suite::Remainder: {
                const TrendVerdict v = remainder_decay_check(results, cfg);
                std::vector<double> lx, ly;
                for (std::size_t i = 0; i < v.grid_n.size(); ++i) {
                    lx.push_back(std::log2(v.grid_n[i]));
                    ly.push_back(std::log2(v.medians[i]));
                }
                const LineFit fit = ols_line(lx, ly);
                const fs::path p = dir / "remainder_decay.svg";
                write_file_atomic(p,
                                  svg_loglog_fit(lx, ly, fit.slope, fit.intercept,
                                                 "median max|R_k|/n^rho vs log2 n"));
                outputs.push_back(p);
                break;
            }
            default: break;
        }
    }
}

}  // namespace

int cmd_simulate(const CommandOptions& opts) {
    if (!opts.ingest.empty()) {
        std::fprintf(stderr, "simulate: nothing to do when --ingest is given\n");
        return kExitUsage;
    }
    const auto cfg = load_config(opts);
    if (!cfg) return kExitUsage;
    const std::string started_at = iso8601_utc_now();
    const auto produced = produce_results(opts, *cfg);
    if (!produced) return kExitUsage;
    write_manifest(opts, *cfg, produced->outputs, started_at);
    std::printf("simulate: %u replicates x %zu grid points -> %s\n", cfg->replicates,
                cfg->n_grid.size(), opts.out_dir.c_str());
    return kExitPass;
}

int cmd_verify(const CommandOptions& opts) {
    const auto cfg = load_config(opts);
    if (!cfg) return kExitUsage;
    Suite suite;
    try {
        suite = parse_suite(opts.suite);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitUsage;
    }

    const std::string started_at = iso8601_utc_now();
    auto produced = produce_results(opts, *cfg);
    if (!produced) return kExitUsage;

    std::vector<SuiteReport> reports;
    LimitArtifacts limit_art;
    const int threads = effective_threads(opts, *cfg);
    try {
        auto want = [&](Suite s) { return suite == Suite::All || suite == s; };
        if (want(Suite::Scaling)) reports.push_back(scaling_suite(*cfg, produced->results));
        if (want(Suite::Selfint)) reports.push_back(selfint_suite(*cfg, produced->results));
        if (want(Suite::Remainder))
            reports.push_back(remainder_suite(*cfg, produced->results));
        if (want(Suite::Limit))
            reports.push_back(limit_suite(*cfg, produced->results, threads, &limit_art));
        if (want(Suite::Lil)) reports.push_back(lil_suite(*cfg, produced->results));
    } catch (const std::exception& e) {
        std::fprintf(stderr, "verify error: %s\n", e.what());
        return kExitUsage;
    }

    // A directly requested suite whose regime preconditions fail is a usage
    // error naming the constraint, not a verification failure.
    if (suite != Suite::All && reports.size() == 1 && !reports.front().applicable) {
        std::fprintf(stderr, "refusal: %s\n", reports.front().refusal.c_str());
        return kExitUsage;
    }

    bool all_pass = true;
    for (const SuiteReport& report : reports) {
        const fs::path path =
            fs::path(opts.out_dir) / ("report_" + std::string(to_string(report.suite)) + ".json");
        write_file_atomic(path, report_to_json(*cfg, report));
        produced->outputs.push_back(path);
        if (!report.applicable) {
            std::printf("suite %-9s SKIP  %s\n", to_string(report.suite),
                        report.refusal.c_str());
            continue;
        }
        const bool pass = report.pass();
        all_pass = all_pass && pass;
        std::printf("suite %-9s %s\n", to_string(report.suite), pass ? "PASS" : "FAIL");
        for (const CheckEntry& e : report.entries)
            std::printf("  %-28s %s  value %.6g  tolerance [%.6g, %.6g]\n", e.name.c_str(),
                        e.pass ? "PASS" : "FAIL", e.value, e.lo, e.hi);
    }

    if (opts.plots)
        write_plots(opts, *cfg, produced->results, reports, limit_art, produced->outputs);
    write_manifest(opts, *cfg, produced->outputs, started_at);
    return all_pass ? kExitPass : kExitFail;
}

int cmd_estimate_b(const CommandOptions& opts) {
    const auto cfg = load_config(opts);
    if (!cfg) return kExitUsage;
    if (!(cfg->alpha < 1.0)) {
        std::fprintf(stderr,
                     "refusal: estimate-b requires alpha < 1 (transient walk); "
                     "config has alpha = %g\n",
                     cfg->alpha);
        return kExitUsage;
    }
    const std::string started_at = iso8601_utc_now();
    RngStream stream(mix2(cfg->master_seed, kSaltEstimateB));
    BEstimate est;
    try {
        est = estimate_b_constant(cfg->step_law, cfg->beta, cfg->estimate_b.horizon,
                                  cfg->replicates, stream);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "estimate-b error: %s\n", e.what());
        return kExitUsage;
    }

    ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["artifact_version"] = kArtifactVersion;
    j["b_estimate"] = est.value;
    j["std_err"] = est.std_err;
    j["horizon"] = est.horizon;
    j["replicates"] = est.replicates;
    const double gap = std::abs(est.value - est.value_half_horizon);
    const double combined_se = std::sqrt(est.std_err * est.std_err +
                                         est.std_err_half * est.std_err_half);
    j["stabilization"] = {{"half_horizon_estimate", est.value_half_horizon},
                          {"half_horizon_std_err", est.std_err_half},
                          {"gap", gap},
                          {"gap_within_2se", gap < 2.0 * combined_se}};
    j["note"] =
        "horizon-truncated estimate; transience makes the truncation bias decay, "
        "monitored by the half-horizon gap";
    const fs::path path = fs::path(opts.out_dir) / "b_estimate.json";
    write_file_atomic(path, j.dump(2) + "\n");
    write_manifest(opts, *cfg, {path}, started_at);
    std::printf("b = %.6g (se %.3g), horizon %llu\n", est.value, est.std_err,
                static_cast<unsigned long long>(est.horizon));
    return kExitPass;
}

}  // namespace rwrs
