#pragma once

// Persistence: the records CSV (schema `replicate,n,u,l,r,v,range`, floats at
// 17 significant digits so round-trips are exact), the optional LIL CSV, JSON
// suite reports and the run manifest with its seed ledger and content hashes.
// All files are written atomically (temp + rename).

#include <filesystem>
#include <string>
#include <vector>

#include "rwrs/config.hpp"
#include "rwrs/runner.hpp"
#include "rwrs/verify.hpp"

namespace rwrs {

std::uint64_t fnv1a64(const std::string& bytes);
std::string fnv1a64_hex(const std::string& bytes);
std::string read_file(const std::filesystem::path& path);
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string records_to_csv(const std::vector<ReplicateResult>& results);

// Parses a records CSV; throws on malformed input. `warnings` (optional)
// collects non-fatal notes; a clean round-trip produces none.
std::vector<ReplicateResult> records_from_csv(const std::string& csv,
                                              std::vector<std::string>* warnings = nullptr);

std::string lil_to_csv(const std::vector<ReplicateResult>& results);
void lil_from_csv(const std::string& csv, std::vector<ReplicateResult>& results);

std::string report_to_json(const ExperimentConfig& cfg, const SuiteReport& report);

// Manifest: config echo + hash, seed ledger (master and per-replicate derived
// seeds), artifact version, timestamps, and the output file inventory with
// content hashes. Timestamps are the only nondeterministic fields.
std::string manifest_json(const ExperimentConfig& cfg,
                          const std::vector<std::filesystem::path>& outputs,
                          const std::string& started_at, const std::string& finished_at);

std::string iso8601_utc_now();

// Minimal standalone SVG plots (no runtime display).
std::string svg_loglog_fit(const std::vector<double>& log2_n,
                           const std::vector<double>& log2_q, double slope,
                           double intercept, const std::string& title);
std::string svg_cdf_overlay(std::vector<double> a, std::vector<double> b,
                            const std::string& title);
std::string svg_lil_band(const std::vector<double>& mplus,
                         const std::vector<double>& neg_mminus, double c, double band_lo,
                         double band_hi, const std::string& title);

}  // namespace rwrs
