#pragma once

// Experiment configuration: a flat, typed key-value text file with
// TOML-style tables ([step_law], [scenery_law], [kernel], [n_grid], ...).
// Parsing reports line-level diagnostics; validation names the offending
// field. The raw text is kept verbatim for the run manifest and config hash.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rwrs/kernel.hpp"
#include "rwrs/stable.hpp"

namespace rwrs {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LilSettings {
    bool enabled = false;
    std::uint64_t k_min = 10000;  // lower edge of the sup/inf scan; >= 16
};

struct LimitSettings {
    double dt = 1e-4;
    double dx = 0.004;
    int draws = 2000;         // Delta draws for the KS comparison
    int refine_draws = 10000;  // per batch in the (dt, dx)-halving stability check
    std::uint64_t n_star = 0;  // 0 = largest grid point
};

struct FitSettings {
    double quantile = 0.5;
    int bootstrap = 200;
    std::uint64_t n_min = 0;  // restrict exponent fits to records with n >= n_min
};

struct EstimateBSettings {
    std::uint64_t horizon = 100000;  // return-count truncation horizon
};

struct Tolerances {
    double slope_lo = 0.0;  // 0 = default band target -/+ 0.15
    double slope_hi = 0.0;
    double ks_limit = 0.1;
    double refine_shift = 0.05;
    double lil_band_lo = 0.3;  // multiples of the theoretical constant
    double lil_band_hi = 3.0;
    double lil_symmetry_ks = 0.05;
};

struct ExperimentConfig {
    double alpha = 2.0;
    double beta = 2.0;
    double beta_prime = 0.0;  // 0 = beta + 0.5
    std::uint32_t replicates = 100;
    std::uint64_t master_seed = 1;
    int threads = 0;  // 0 = all cores
    LatticeStepLaw step_law;
    SceneryLaw scenery_law;
    KernelSpec kernel;
    std::vector<std::uint64_t> n_grid;
    LilSettings lil;
    LimitSettings limit;
    FitSettings fit;
    EstimateBSettings estimate_b;
    Tolerances tol;
    std::string raw_text;

    void validate() const;  // throws ConfigError naming each bad field

    double alpha_prime() const { return alpha > 1.0 ? alpha : 1.0; }
    double beta_prime_effective() const {
        return beta_prime > 0.0 ? beta_prime : beta + 0.5;
    }
    // Growth exponent of U_n: 2 - 1/alpha + 1/(alpha beta) for alpha > 1,
    // 1 + 1/beta for alpha <= 1 (log factors absorbed into tolerance bands).
    double target_u_exponent() const;
    // Exponent of the remainder normalizer n^{2 - 1/alpha' + 1/(alpha' beta)}.
    double remainder_exponent() const;
    std::uint64_t n_max() const { return n_grid.empty() ? 0 : n_grid.back(); }
    std::uint64_t n_star_effective() const {
        return limit.n_star > 0 ? limit.n_star : n_max();
    }
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

const char* to_string(StepKind kind);
const char* to_string(SceneryKind kind);

}  // namespace rwrs
