#include "rwrs/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace rwrs {

namespace {

// Build-level seed freezing the Monte Carlo h1 estimator.
constexpr std::uint64_t kFrozenH1Seed = 0x68316d6331643366ULL;

std::map<std::string, KernelFn>& registry() {
    static std::map<std::string, KernelFn> reg = {
        {"abs_diff", [](double x, double y) { return std::abs(x - y); }},
    };
    return reg;
}

}  // namespace

void register_custom_kernel(const std::string& name, KernelFn fn) {
    registry()[name] = fn;
}

const std::map<std::string, KernelFn>& custom_kernels() { return registry(); }

void KernelSpec::validate() const {
    if (h1_samples <= 0)
        throw std::invalid_argument("KernelSpec: h1_samples must be positive");
    if (kind == KernelKind::Custom) {
        if (h1_mode != H1Mode::MonteCarloEstimated)
            throw std::invalid_argument(
                "KernelSpec: custom kernels require h1_mode = monte_carlo");
        if (custom_kernels().count(custom_name) == 0)
            throw std::invalid_argument("KernelSpec: unknown custom kernel '" +
                                        custom_name + "'");
    } else if (centering != 0.0) {
        throw std::invalid_argument(
            "KernelSpec: presets are already centered; centering must be 0");
    }
}

Kernel::Kernel(const KernelSpec& spec) : spec_(spec) {
    spec_.validate();
    if (spec_.kind == KernelKind::Custom)
        custom_fn_ = custom_kernels().at(spec_.custom_name);
}

bool Kernel::diagonal_integrable(const SceneryLaw& law) const {
    const bool needs_second_moment = spec_.kind == KernelKind::Product ||
                                     spec_.kind == KernelKind::ProductPlusSum;
    if (!needs_second_moment) return true;
    return !(law.kind == SceneryKind::SymmetricParetoReal && law.index < 2.0);
}

HoeffdingParts hoeffding_split(const Kernel& kernel, const SceneryLaw& scenery_law) {
    scenery_law.validate();
    const KernelSpec& spec = kernel.spec();
    HoeffdingParts parts;
    parts.kernel_ = &kernel;
    parts.centering_ = spec.centering;

    if (spec.h1_mode == H1Mode::Analytic) {
        switch (spec.kind) {
            case KernelKind::Sum:
                parts.mode_ = HoeffdingParts::Mode::Identity;
                parts.h2_identically_zero_ = true;
                break;
            case KernelKind::ProductPlusSum:
                parts.mode_ = HoeffdingParts::Mode::Identity;
                break;
            case KernelKind::Product:
            case KernelKind::BoundedSignProduct:
                // h1(x) = x * E xi resp. sign(x) * E sign(xi); zero for all
                // configured centered symmetric sceneries.
                parts.mode_ = HoeffdingParts::Mode::Zero;
                break;
            case KernelKind::Custom:
                throw std::invalid_argument(
                    "hoeffding_split: custom kernels have no analytic h1");
        }
        return parts;
    }

    parts.mode_ = HoeffdingParts::Mode::MonteCarlo;
    switch (spec.kind) {
        case KernelKind::Sum: parts.base_ = [](double x, double y) { return x + y; }; break;
        case KernelKind::Product:
            parts.base_ = [](double x, double y) { return x * y; };
            break;
        case KernelKind::ProductPlusSum:
            parts.base_ = [](double x, double y) { return x * y + (x + y); };
            break;
        case KernelKind::BoundedSignProduct:
            parts.base_ = [](double x, double y) {
                return Kernel::sign(x) * Kernel::sign(y);
            };
            break;
        case KernelKind::Custom: parts.base_ = custom_kernels().at(spec.custom_name); break;
    }
    if (spec.h1_samples < 1000)
        parts.warning_ =
            "h1_samples < 1000: estimator variance pollutes the remainder term";
    RngStream stream(mix2(kFrozenH1Seed, static_cast<std::uint64_t>(spec.h1_samples)));
    parts.draws_.resize(static_cast<std::size_t>(spec.h1_samples));
    for (double& d : parts.draws_) d = sample_scenery_value(scenery_law, stream);
    return parts;
}

double truncation_threshold(int level, double alpha_prime, double beta_prime) {
    return std::exp2(level * (1.0 + beta_prime) / (alpha_prime * beta_prime));
}

double truncation_eta(double beta_prime) {
    return 2.0 * beta_prime / (1.0 + beta_prime);
}

TruncatedKernel::TruncatedKernel(const Kernel& base, const SceneryLaw& scenery_law,
                                 int level, double alpha_prime, double beta_prime)
    : base_(&base), level_(level) {
    if (level <= 0) throw std::invalid_argument("TruncatedKernel: level must be positive");
    if (!(alpha_prime >= 1.0))
        throw std::invalid_argument("TruncatedKernel: alpha_prime = max(1, alpha) >= 1");
    if (!(beta_prime > scenery_law.index))
        throw std::invalid_argument(
            "TruncatedKernel: beta_prime must exceed the scenery index");
    a_l_ = truncation_threshold(level, alpha_prime, beta_prime);

    if (scenery_law.kind == SceneryKind::Rademacher) {
        two_point_ = true;
        point_ = scenery_law.scale;
        return;
    }
    RngStream stream(mix2(kFrozenH1Seed + 1, static_cast<std::uint64_t>(level)));
    draws_.resize(static_cast<std::size_t>(base.spec().h1_samples));
    for (double& d : draws_) d = sample_scenery_value(scenery_law, stream);
}

TruncatedKernel truncate_kernel(const Kernel& base, const SceneryLaw& scenery_law,
                                int level, double alpha_prime, double beta_prime) {
    return TruncatedKernel(base, scenery_law, level, alpha_prime, beta_prime);
}

const char* to_string(KernelKind kind) {
    switch (kind) {
        case KernelKind::Sum: return "sum";
        case KernelKind::Product: return "product";
        case KernelKind::ProductPlusSum: return "product_plus_sum";
        case KernelKind::BoundedSignProduct: return "bounded_sign_product";
        case KernelKind::Custom: return "custom";
    }
    return "?";
}

const char* to_string(H1Mode mode) {
    return mode == H1Mode::Analytic ? "analytic" : "monte_carlo";
}

}  // namespace rwrs
