#include "rwrs/io.hpp"

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "rwrs/version.hpp"

namespace rwrs {

using ordered_json = nlohmann::ordered_json;

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string fnv1a64_hex(const std::string& bytes) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, fnv1a64(bytes));
    return buf;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

namespace {

void append_float(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

}  // namespace

std::string records_to_csv(const std::vector<ReplicateResult>& results) {
    std::string out = "replicate,n,u,l,r,v,range\n";
    char buf[64];
    for (const auto& rep : results) {
        for (const auto& rec : rep.records) {
            std::snprintf(buf, sizeof buf, "%u,%" PRIu64 ",", rep.replicate, rec.n);
            out += buf;
            append_float(out, rec.u);
            out += ',';
            append_float(out, rec.l);
            out += ',';
            append_float(out, rec.r);
            std::snprintf(buf, sizeof buf, ",%" PRId64 ",%" PRIu64 "\n", rec.v, rec.range);
            out += buf;
        }
    }
    return out;
}

std::vector<ReplicateResult> records_from_csv(const std::string& csv,
                                              std::vector<std::string>* warnings) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("records CSV: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "replicate,n,u,l,r,v,range")
        throw std::runtime_error("records CSV: unexpected header '" + line + "'");

    std::vector<ReplicateResult> results;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            if (warnings) warnings->push_back("line " + std::to_string(lineno) + ": blank row");
            continue;
        }
        unsigned replicate = 0;
        GridRecord rec;
        const int got = std::sscanf(line.c_str(),
                                    "%u,%" SCNu64 ",%lf,%lf,%lf,%" SCNd64 ",%" SCNu64,
                                    &replicate, &rec.n, &rec.u, &rec.l, &rec.r, &rec.v,
                                    &rec.range);
        if (got != 7)
            throw std::runtime_error("records CSV: malformed row at line " +
                                     std::to_string(lineno));
        if (results.empty() || results.back().replicate != replicate) {
            if (!results.empty() && replicate != results.back().replicate + 1)
                throw std::runtime_error("records CSV: replicate ids not contiguous at line " +
                                         std::to_string(lineno));
            results.push_back(ReplicateResult{replicate, {}, std::nullopt});
        }
        results.back().records.push_back(rec);
    }
    return results;
}

std::string lil_to_csv(const std::vector<ReplicateResult>& results) {
    std::string out = "replicate,mplus,mminus,k_min,n_max\n";
    char buf[64];
    for (const auto& rep : results) {
        if (!rep.lil) continue;
        std::snprintf(buf, sizeof buf, "%u,", rep.replicate);
        out += buf;
        append_float(out, rep.lil->mplus);
        out += ',';
        append_float(out, rep.lil->mminus);
        std::snprintf(buf, sizeof buf, ",%" PRIu64 ",%" PRIu64 "\n", rep.lil->k_min,
                      rep.lil->n_max);
        out += buf;
    }
    return out;
}

void lil_from_csv(const std::string& csv, std::vector<ReplicateResult>& results) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("lil CSV: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "replicate,mplus,mminus,k_min,n_max")
        throw std::runtime_error("lil CSV: unexpected header");
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        unsigned replicate = 0;
        LilTrack track;
        const int got = std::sscanf(line.c_str(), "%u,%lf,%lf,%" SCNu64 ",%" SCNu64,
                                    &replicate, &track.mplus, &track.mminus,
                                    &track.k_min, &track.n_max);
        if (got != 5)
            throw std::runtime_error("lil CSV: malformed row at line " +
                                     std::to_string(lineno));
        if (replicate >= results.size() || results[replicate].replicate != replicate)
            throw std::runtime_error("lil CSV: replicate id not in records");
        results[replicate].lil = track;
    }
}

namespace {

ordered_json config_echo(const ExperimentConfig& cfg) {
    ordered_json j;
    j["alpha"] = cfg.alpha;
    j["beta"] = cfg.beta;
    j["beta_prime"] = cfg.beta_prime_effective();
    j["replicates"] = cfg.replicates;
    j["master_seed"] = cfg.master_seed;
    j["step_law"] = {{"kind", to_string(cfg.step_law.kind)},
                     {"hold_prob", cfg.step_law.hold_prob},
                     {"tail_cut", cfg.step_law.tail_cut}};
    j["scenery_law"] = {{"kind", to_string(cfg.scenery_law.kind)},
                        {"scale", cfg.scenery_law.scale}};
    j["kernel"] = {{"kind", to_string(cfg.kernel.kind)},
                   {"h1_mode", to_string(cfg.kernel.h1_mode)},
                   {"h1_samples", cfg.kernel.h1_samples},
                   {"centering", cfg.kernel.centering},
                   {"custom_name", cfg.kernel.custom_name}};
    j["n_grid"] = cfg.n_grid;
    j["config_hash"] = fnv1a64_hex(cfg.raw_text);
    return j;
}

}  // namespace

std::string report_to_json(const ExperimentConfig& cfg, const SuiteReport& report) {
    ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["artifact_version"] = kArtifactVersion;
    j["suite"] = to_string(report.suite);
    j["applicable"] = report.applicable;
    if (!report.applicable) j["refusal"] = report.refusal;
    j["pass"] = report.pass();
    ordered_json entries = ordered_json::array();
    for (const auto& e : report.entries) {
        ordered_json entry;
        entry["check"] = e.name;
        entry["value"] = e.value;
        entry["tolerance"] = {{"lo", e.lo}, {"hi", e.hi}};
        entry["pass"] = e.pass;
        entry["note"] = e.note;
        entries.push_back(entry);
    }
    j["checks"] = entries;
    j["config"] = config_echo(cfg);
    return j.dump(2) + "\n";
}

std::string manifest_json(const ExperimentConfig& cfg,
                          const std::vector<std::filesystem::path>& outputs,
                          const std::string& started_at, const std::string& finished_at) {
    ordered_json j;
    j["artifact_version"] = kArtifactVersion;
    j["started_at"] = started_at;
    j["finished_at"] = finished_at;
    j["config"] = config_echo(cfg);
    j["config_text"] = cfg.raw_text;

    ordered_json ledger;
    ledger["master_seed"] = cfg.master_seed;
    ordered_json derived = ordered_json::array();
    for (std::uint32_t r = 0; r < cfg.replicates; ++r) {
        derived.push_back({{"replicate", r},
                           {"walk_seed", walk_seed_for(cfg.master_seed, r)},
                           {"scenery_seed", scenery_seed_for(cfg.master_seed, r)}});
    }
    ledger["derived"] = derived;
    j["seed_ledger"] = ledger;

    ordered_json files = ordered_json::array();
    for (const auto& path : outputs) {
        files.push_back({{"file", path.filename().string()},
                         {"fnv1a64", fnv1a64_hex(read_file(path))},
                         {"bytes", std::filesystem::file_size(path)}});
    }
    j["outputs"] = files;
    return j.dump(2) + "\n";
}

std::string iso8601_utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 480;
constexpr int kMargin = 56;

struct Mapper {
    double x_lo, x_hi, y_lo, y_hi;
    double px(double x) const {
        return kMargin + (x - x_lo) / (x_hi - x_lo) * (kWidth - 2 * kMargin);
    }
    double py(double y) const {
        return kHeight - kMargin - (y - y_lo) / (y_hi - y_lo) * (kHeight - 2 * kMargin);
    }
};

std::string svg_open(const std::string& title) {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
       << "\" height=\"" << kHeight << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
          "font-family=\"sans-serif\" font-size=\"14\">"
       << title << "</text>\n";
    return os.str();
}

Mapper fit_mapper(const std::vector<double>& xs, const std::vector<double>& ys) {
    Mapper m{xs.front(), xs.front(), ys.front(), ys.front()};
    for (double x : xs) {
        m.x_lo = std::min(m.x_lo, x);
        m.x_hi = std::max(m.x_hi, x);
    }
    for (double y : ys) {
        m.y_lo = std::min(m.y_lo, y);
        m.y_hi = std::max(m.y_hi, y);
    }
    const double pad_x = 0.05 * (m.x_hi - m.x_lo) + 1e-9;
    const double pad_y = 0.05 * (m.y_hi - m.y_lo) + 1e-9;
    m.x_lo -= pad_x;
    m.x_hi += pad_x;
    m.y_lo -= pad_y;
    m.y_hi += pad_y;
    return m;
}

void axes(std::ostringstream& os) {
    os << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
       << kWidth - 2 * kMargin << "\" height=\"" << kHeight - 2 * kMargin
       << "\" fill=\"none\" stroke=\"black\"/>\n";
}

}  // namespace

std::string svg_loglog_fit(const std::vector<double>& log2_n,
                           const std::vector<double>& log2_q, double slope,
                           double intercept, const std::string& title) {
    std::ostringstream os;
    os << svg_open(title);
    const Mapper m = fit_mapper(log2_n, log2_q);
    axes(os);
    for (std::size_t i = 0; i < log2_n.size(); ++i)
        os << "<circle cx=\"" << m.px(log2_n[i]) << "\" cy=\"" << m.py(log2_q[i])
           << "\" r=\"4\" fill=\"steelblue\"/>\n";
    os << "<line x1=\"" << m.px(m.x_lo) << "\" y1=\"" << m.py(slope * m.x_lo + intercept)
       << "\" x2=\"" << m.px(m.x_hi) << "\" y2=\"" << m.py(slope * m.x_hi + intercept)
       << "\" stroke=\"crimson\" stroke-width=\"1.5\"/>\n"
       << "<text x=\"" << kMargin + 8 << "\" y=\"" << kHeight - 8
       << "\" font-family=\"sans-serif\" font-size=\"12\">slope " << slope
       << "</text>\n</svg>\n";
    return os.str();
}

std::string svg_cdf_overlay(std::vector<double> a, std::vector<double> b,
                            const std::string& title) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::ostringstream os;
    os << svg_open(title);
    std::vector<double> xs;
    xs.insert(xs.end(), a.begin(), a.end());
    xs.insert(xs.end(), b.begin(), b.end());
    std::vector<double> ys = {0.0, 1.0};
    const Mapper m = fit_mapper(xs, ys);
    axes(os);
    auto polyline = [&](const std::vector<double>& s, const char* color) {
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
        const std::size_t step = std::max<std::size_t>(1, s.size() / 512);
        for (std::size_t i = 0; i < s.size(); i += step)
            os << m.px(s[i]) << "," << m.py(static_cast<double>(i + 1) / static_cast<double>(s.size()))
               << " ";
        os << "\"/>\n";
    };
    polyline(a, "steelblue");
    polyline(b, "crimson");
    os << "</svg>\n";
    return os.str();
}

std::string svg_lil_band(const std::vector<double>& mplus,
                         const std::vector<double>& neg_mminus, double c, double band_lo,
                         double band_hi, const std::string& title) {
    std::ostringstream os;
    os << svg_open(title);
    std::vector<double> xs = {0.0, static_cast<double>(mplus.size() + 1)};
    std::vector<double> ys = {0.0, band_hi * 1.2};
    for (double v : mplus) ys.push_back(v);
    for (double v : neg_mminus) ys.push_back(v);
    const Mapper m = fit_mapper(xs, ys);
    axes(os);
    auto hline = [&](double y, const char* color) {
        os << "<line x1=\"" << m.px(m.x_lo) << "\" y1=\"" << m.py(y) << "\" x2=\""
           << m.px(m.x_hi) << "\" y2=\"" << m.py(y) << "\" stroke=\"" << color
           << "\" stroke-dasharray=\"4\"/>\n";
    };
    hline(band_lo, "gray");
    hline(band_hi, "gray");
    hline(c, "black");
    for (std::size_t i = 0; i < mplus.size(); ++i)
        os << "<circle cx=\"" << m.px(static_cast<double>(i + 1)) << "\" cy=\""
           << m.py(mplus[i]) << "\" r=\"3\" fill=\"steelblue\"/>\n";
    for (std::size_t i = 0; i < neg_mminus.size(); ++i)
        os << "<circle cx=\"" << m.px(static_cast<double>(i + 1)) << "\" cy=\""
           << m.py(neg_mminus[i]) << "\" r=\"3\" fill=\"crimson\"/>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace rwrs
