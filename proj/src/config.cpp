#include "rwrs/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace rwrs {

namespace {

struct RawValue {
    std::string token;             // scalar token or quoted string content
    bool quoted = false;
    std::vector<std::string> list;  // set when the value was [a, b, c]
    bool is_list = false;
    int line = 0;
};

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

class Parser {
  public:
    explicit Parser(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        std::string section;
        while (std::getline(in, line)) {
            ++lineno;
            strip_comment(line);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']') {
                    fail(lineno, "unterminated table header");
                    continue;
                }
                section = trim(line.substr(1, line.size() - 2));
                if (section.empty()) fail(lineno, "empty table name");
                continue;
            }
            const std::size_t eq = line.find('=');
            if (eq == std::string::npos) {
                fail(lineno, "expected 'key = value'");
                continue;
            }
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty() || value.empty()) {
                fail(lineno, "empty key or value");
                continue;
            }
            const std::string full = section.empty() ? key : section + "." + key;
            if (kv_.count(full)) {
                fail(lineno, "duplicate key '" + full + "'");
                continue;
            }
            kv_[full] = parse_value(value, lineno);
        }
    }

    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    double get_real(const std::string& key, double def) {
        const RawValue* v = fetch(key);
        if (!v) return def;
        return parse_real(*v, key);
    }

    std::int64_t get_int(const std::string& key, std::int64_t def) {
        const RawValue* v = fetch(key);
        if (!v) return def;
        return parse_int(*v, key);
    }

    std::uint64_t get_u64(const std::string& key, std::uint64_t def) {
        const RawValue* v = fetch(key);
        if (!v) return def;
        if (v->is_list || v->quoted || v->token.empty() || v->token[0] == '-') {
            fail(v->line, key + ": expected a nonnegative integer");
            return def;
        }
        char* end = nullptr;
        const std::uint64_t out = std::strtoull(v->token.c_str(), &end, 10);
        if (end == nullptr || *end != '\0')
            fail(v->line, key + ": expected a nonnegative integer");
        return out;
    }

    bool get_bool(const std::string& key, bool def) {
        const RawValue* v = fetch(key);
        if (!v) return def;
        if (v->token == "true") return true;
        if (v->token == "false") return false;
        fail(v->line, key + ": expected true or false");
        return def;
    }

    std::string get_string(const std::string& key, const std::string& def) {
        const RawValue* v = fetch(key);
        if (!v) return def;
        if (!v->quoted) fail(v->line, key + ": expected a quoted string");
        return v->token;
    }

    std::vector<std::uint64_t> get_u64_list(const std::string& key) {
        const RawValue* v = fetch(key);
        std::vector<std::uint64_t> out;
        if (!v) return out;
        if (!v->is_list) {
            fail(v->line, key + ": expected [a, b, ...]");
            return out;
        }
        for (const std::string& tok : v->list) {
            char* end = nullptr;
            out.push_back(std::strtoull(tok.c_str(), &end, 10));
            if (end == nullptr || *end != '\0')
                fail(v->line, key + ": expected integer list entries");
        }
        return out;
    }

    // Unknown keys are configuration errors; typos must not silently apply
    // defaults.
    void finish() {
        for (const auto& [key, value] : kv_) {
            if (!used_.count(key))
                fail(value.line, "unknown key '" + key + "'");
        }
        if (!errors_.empty()) {
            std::string all;
            for (const std::string& e : errors_) {
                if (!all.empty()) all += "\n";
                all += e;
            }
            throw ConfigError(all);
        }
    }

  private:
    static void strip_comment(std::string& line) {
        bool in_quote = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') in_quote = !in_quote;
            if (line[i] == '#' && !in_quote) {
                line.erase(i);
                return;
            }
        }
    }

    RawValue parse_value(const std::string& value, int lineno) {
        RawValue v;
        v.line = lineno;
        if (value.front() == '"') {
            if (value.size() < 2 || value.back() != '"') {
                fail(lineno, "unterminated string");
                return v;
            }
            v.quoted = true;
            v.token = value.substr(1, value.size() - 2);
            return v;
        }
        if (value.front() == '[') {
            if (value.back() != ']') {
                fail(lineno, "unterminated list");
                return v;
            }
            v.is_list = true;
            std::string body = value.substr(1, value.size() - 2);
            std::istringstream items(body);
            std::string item;
            while (std::getline(items, item, ',')) {
                item = trim(item);
                if (!item.empty()) v.list.push_back(item);
            }
            return v;
        }
        v.token = value;
        return v;
    }

    const RawValue* fetch(const std::string& key) {
        auto it = kv_.find(key);
        if (it == kv_.end()) return nullptr;
        used_.insert(key);
        return &it->second;
    }

    double parse_real(const RawValue& v, const std::string& key) {
        if (v.is_list || v.quoted) {
            fail(v.line, key + ": expected a number");
            return 0.0;
        }
        char* end = nullptr;
        const double out = std::strtod(v.token.c_str(), &end);
        if (end == nullptr || *end != '\0') fail(v.line, key + ": expected a number");
        return out;
    }

    std::int64_t parse_int(const RawValue& v, const std::string& key) {
        if (v.is_list || v.quoted) {
            fail(v.line, key + ": expected an integer");
            return 0;
        }
        char* end = nullptr;
        const std::int64_t out = std::strtoll(v.token.c_str(), &end, 10);
        if (end == nullptr || *end != '\0') fail(v.line, key + ": expected an integer");
        return out;
    }

    void fail(int line, const std::string& message) {
        errors_.push_back("line " + std::to_string(line) + ": " + message);
    }

    std::map<std::string, RawValue> kv_;
    std::set<std::string> used_;
    std::vector<std::string> errors_;
};

StepKind parse_step_kind(const std::string& s) {
    if (s == "lazy_simple") return StepKind::LazySimple;
    if (s == "sym_pareto") return StepKind::SymmetricPareto;
    throw ConfigError("step_law.kind: unknown preset '" + s +
                      "' (expected lazy_simple or sym_pareto)");
}

SceneryKind parse_scenery_kind(const std::string& s) {
    if (s == "rademacher") return SceneryKind::Rademacher;
    if (s == "gaussian") return SceneryKind::Gaussian;
    if (s == "sym_pareto_real") return SceneryKind::SymmetricParetoReal;
    throw ConfigError("scenery_law.kind: unknown preset '" + s + "'");
}

KernelKind parse_kernel_kind(const std::string& s) {
    if (s == "sum") return KernelKind::Sum;
    if (s == "product") return KernelKind::Product;
    if (s == "product_plus_sum") return KernelKind::ProductPlusSum;
    if (s == "bounded_sign_product") return KernelKind::BoundedSignProduct;
    if (s == "custom") return KernelKind::Custom;
    throw ConfigError("kernel.kind: unknown preset '" + s + "'");
}

H1Mode parse_h1_mode(const std::string& s) {
    if (s == "analytic") return H1Mode::Analytic;
    if (s == "monte_carlo") return H1Mode::MonteCarloEstimated;
    throw ConfigError("kernel.h1_mode: expected analytic or monte_carlo");
}

}  // namespace

const char* to_string(StepKind kind) {
    return kind == StepKind::LazySimple ? "lazy_simple" : "sym_pareto";
}

const char* to_string(SceneryKind kind) {
    switch (kind) {
        case SceneryKind::Rademacher: return "rademacher";
        case SceneryKind::Gaussian: return "gaussian";
        case SceneryKind::SymmetricParetoReal: return "sym_pareto_real";
    }
    return "?";
}

ExperimentConfig parse_config_text(const std::string& text) {
    Parser p(text);
    ExperimentConfig cfg;
    cfg.raw_text = text;

    cfg.alpha = p.get_real("alpha", cfg.alpha);
    cfg.beta = p.get_real("beta", cfg.beta);
    cfg.beta_prime = p.get_real("beta_prime", cfg.beta_prime);
    cfg.replicates = static_cast<std::uint32_t>(p.get_u64("replicates", cfg.replicates));
    cfg.master_seed = p.get_u64("master_seed", cfg.master_seed);
    cfg.threads = static_cast<int>(p.get_int("threads", cfg.threads));

    cfg.step_law.kind = parse_step_kind(p.get_string("step_law.kind", "lazy_simple"));
    cfg.step_law.index = cfg.alpha;
    cfg.step_law.hold_prob = p.get_real(
        "step_law.hold_prob", cfg.step_law.kind == StepKind::LazySimple ? 0.5 : 0.2);
    cfg.step_law.tail_cut = p.get_int("step_law.tail_cut", 0);

    cfg.scenery_law.kind = parse_scenery_kind(p.get_string("scenery_law.kind", "rademacher"));
    cfg.scenery_law.index = cfg.beta;
    cfg.scenery_law.scale = p.get_real("scenery_law.scale", 1.0);

    cfg.kernel.kind = parse_kernel_kind(p.get_string("kernel.kind", "product_plus_sum"));
    cfg.kernel.h1_mode = parse_h1_mode(p.get_string(
        "kernel.h1_mode", cfg.kernel.kind == KernelKind::Custom ? "monte_carlo" : "analytic"));
    cfg.kernel.h1_samples = static_cast<int>(p.get_int("kernel.h1_samples", 4096));
    cfg.kernel.centering = p.get_real("kernel.centering", 0.0);
    cfg.kernel.custom_name = p.get_string("kernel.custom_name", "");

    if (p.has("n_grid.values")) {
        cfg.n_grid = p.get_u64_list("n_grid.values");
        if (p.has("n_grid.start") || p.has("n_grid.points"))
            throw ConfigError("n_grid: give either values or start/factor/points, not both");
    } else {
        const std::uint64_t start = p.get_u64("n_grid.start", 1024);
        const std::uint64_t factor = p.get_u64("n_grid.factor", 2);
        const std::uint64_t points = p.get_u64("n_grid.points", 8);
        std::uint64_t n = start;
        for (std::uint64_t i = 0; i < points; ++i) {
            cfg.n_grid.push_back(n);
            n *= factor;
        }
    }

    cfg.lil.enabled = p.get_bool("lil.enabled", false);
    cfg.lil.k_min = p.get_u64("lil.k_min", cfg.lil.k_min);

    cfg.limit.dt = p.get_real("limit.dt", cfg.limit.dt);
    cfg.limit.dx = p.get_real("limit.dx", cfg.limit.dx);
    cfg.limit.draws = static_cast<int>(p.get_int("limit.draws", cfg.limit.draws));
    cfg.limit.refine_draws =
        static_cast<int>(p.get_int("limit.refine_draws", cfg.limit.refine_draws));
    cfg.limit.n_star = p.get_u64("limit.n_star", 0);

    cfg.fit.quantile = p.get_real("fit.quantile", cfg.fit.quantile);
    cfg.fit.bootstrap = static_cast<int>(p.get_int("fit.bootstrap", cfg.fit.bootstrap));
    cfg.fit.n_min = p.get_u64("fit.n_min", 0);

    cfg.estimate_b.horizon = p.get_u64("estimate_b.horizon", cfg.estimate_b.horizon);

    cfg.tol.slope_lo = p.get_real("tolerances.slope_lo", 0.0);
    cfg.tol.slope_hi = p.get_real("tolerances.slope_hi", 0.0);
    cfg.tol.ks_limit = p.get_real("tolerances.ks_limit", cfg.tol.ks_limit);
    cfg.tol.refine_shift = p.get_real("tolerances.refine_shift", cfg.tol.refine_shift);
    cfg.tol.lil_band_lo = p.get_real("tolerances.lil_band_lo", cfg.tol.lil_band_lo);
    cfg.tol.lil_band_hi = p.get_real("tolerances.lil_band_hi", cfg.tol.lil_band_hi);
    cfg.tol.lil_symmetry_ks =
        p.get_real("tolerances.lil_symmetry_ks", cfg.tol.lil_symmetry_ks);

    p.finish();
    cfg.validate();
    return cfg;
}

void ExperimentConfig::validate() const {
    std::vector<std::string> errors;
    auto check = [&](bool ok, const std::string& msg) {
        if (!ok) errors.push_back(msg);
    };

    check(replicates >= 1, "replicates: must be >= 1");
    check(alpha > 0.0 && alpha <= 2.0, "alpha: must be in (0, 2]");
    check(beta > 1.0 && beta <= 2.0, "beta: must be in (1, 2]");
    check(beta_prime_effective() > beta, "beta_prime: must exceed beta");
    check(!n_grid.empty(), "n_grid: must not be empty");
    for (std::size_t i = 0; i + 1 < n_grid.size(); ++i)
        check(n_grid[i] < n_grid[i + 1], "n_grid: must be strictly increasing");
    check(lil.k_min >= 16, "lil.k_min: must be >= 16 so log log k > 0");
    check(limit.dt > 0.0, "limit.dt: must be positive");
    check(limit.dx > 0.0, "limit.dx: must be positive");
    check(limit.draws >= 1, "limit.draws: must be >= 1");
    check(limit.refine_draws >= 1, "limit.refine_draws: must be >= 1");
    check(fit.quantile > 0.0 && fit.quantile < 1.0, "fit.quantile: must be in (0, 1)");
    check(fit.bootstrap >= 0, "fit.bootstrap: must be >= 0");

    try {
        step_law.validate();
    } catch (const std::exception& e) {
        errors.push_back(std::string("step_law: ") + e.what() +
                         " (step_law.index is set from alpha)");
    }
    try {
        scenery_law.validate();
    } catch (const std::exception& e) {
        errors.push_back(std::string("scenery_law: ") + e.what() +
                         " (scenery_law.index is set from beta)");
    }
    try {
        kernel.validate();
    } catch (const std::exception& e) {
        errors.push_back(std::string("kernel: ") + e.what());
    }

    if (!errors.empty()) {
        std::string all;
        for (const std::string& e : errors) {
            if (!all.empty()) all += "\n";
            all += e;
        }
        throw ConfigError(all);
    }
}

double ExperimentConfig::target_u_exponent() const {
    if (alpha > 1.0) return 2.0 - 1.0 / alpha + 1.0 / (alpha * beta);
    return 1.0 + 1.0 / beta;
}

double ExperimentConfig::remainder_exponent() const {
    const double ap = alpha_prime();
    return 2.0 - 1.0 / ap + 1.0 / (ap * beta);
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

}  // namespace rwrs
