#include "rwrs/stable.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rwrs {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::int64_t kTableCap = 1 << 20;

}  // namespace

void StableParams::validate() const {
    if (!(index > 0.0) || !(index <= 2.0))
        throw std::invalid_argument("StableParams: index must be in (0, 2]");
    if (!(skewness >= -1.0) || !(skewness <= 1.0))
        throw std::invalid_argument("StableParams: skewness must be in [-1, 1]");
    if (!(scale > 0.0))
        throw std::invalid_argument("StableParams: scale must be positive");
}

double sample_stable(const StableParams& params, RngStream& stream) {
    params.validate();
    const double theta = kPi * (stream.uniform01() - 0.5);
    const double w = stream.exponential();
    const double a = params.index;
    double x;
    if (a == 2.0) {
        // Gaussian case; skewness has no effect.
        x = 2.0 * std::sin(theta) * std::sqrt(w);
    } else if (params.skewness == 0.0) {
        if (a == 1.0) {
            x = std::tan(theta);
        } else {
            x = std::sin(a * theta) / std::pow(std::cos(theta), 1.0 / a) *
                std::pow(std::cos((1.0 - a) * theta) / w, (1.0 - a) / a);
        }
    } else {
        const double b = params.skewness;
        if (a == 1.0) {
            const double half_pi = kPi / 2.0;
            x = (2.0 / kPi) *
                ((half_pi + b * theta) * std::tan(theta) -
                 b * std::log((half_pi * w * std::cos(theta)) / (half_pi + b * theta)));
        } else {
            const double tan_half = std::tan(kPi * a / 2.0);
            const double theta0 = std::atan(b * tan_half) / a;
            const double s = std::pow(1.0 + b * b * tan_half * tan_half, 1.0 / (2.0 * a));
            x = s * std::sin(a * (theta + theta0)) / std::pow(std::cos(theta), 1.0 / a) *
                std::pow(std::cos(theta - a * (theta + theta0)) / w, (1.0 - a) / a);
        }
    }
    return params.scale * x + params.shift;
}

void LatticeStepLaw::validate() const {
    if (!(hold_prob > 0.0) || !(hold_prob < 1.0))
        throw std::invalid_argument("LatticeStepLaw: hold_prob must be in (0, 1)");
    if (kind == StepKind::LazySimple) {
        if (index != 2.0)
            throw std::invalid_argument("LatticeStepLaw: LazySimple requires index = 2");
    } else {
        if (!(index > 0.0) || !(index < 2.0))
            throw std::invalid_argument(
                "LatticeStepLaw: SymmetricPareto requires index in (0, 2)");
    }
    if (tail_cut < 0 || tail_cut > kTableCap)
        throw std::invalid_argument("LatticeStepLaw: tail_cut out of range");
}

double riemann_zeta(double s) {
    if (!(s > 1.0)) throw std::invalid_argument("riemann_zeta: s must exceed 1");
    const double n = 65536.0;
    double sum = 0.0;
    for (double k = n - 1.0; k >= 1.0; k -= 1.0) sum += std::pow(k, -s);
    // Euler-Maclaurin tail from n upward.
    const double fn = std::pow(n, -s);
    sum += std::pow(n, 1.0 - s) / (s - 1.0) + 0.5 * fn + s * fn / (12.0 * n) -
           s * (s + 1.0) * (s + 2.0) * fn / (720.0 * n * n * n);
    return sum;
}

namespace {

// sum_{j >= k} j^{-s} by Euler-Maclaurin; accurate for k beyond a few hundred.
double power_tail_sum(double k, double s) {
    const double fk = std::pow(k, -s);
    return std::pow(k, 1.0 - s) / (s - 1.0) + 0.5 * fk + s * fk / (12.0 * k) -
           s * (s + 1.0) * (s + 2.0) * fk / (720.0 * k * k * k);
}

}  // namespace

StepSampler::StepSampler(const LatticeStepLaw& law) : law_(law) {
    law_.validate();
    if (law_.kind == StepKind::LazySimple) return;

    const double s = 1.0 + law_.index;
    const std::int64_t table_n = law_.tail_cut > 0 ? law_.tail_cut : kTableCap;
    cum_.resize(static_cast<std::size_t>(table_n));
    double acc = 0.0;
    for (std::int64_t k = 1; k <= table_n; ++k) {
        acc += std::pow(static_cast<double>(k), -s);
        cum_[static_cast<std::size_t>(k - 1)] = acc;
    }
    if (law_.tail_cut > 0) {
        support_sum_ = acc;
    } else {
        support_sum_ = acc + power_tail_sum(static_cast<double>(table_n) + 1.0, s);
        // Rejection bound for the discrete tail beyond the table: proposal is a
        // continuous Pareto on (K + 1/2, inf) rounded to the nearest integer.
        double max_ratio = 1.0 / law_.index;  // k -> inf limit
        for (std::int64_t k = table_n + 1; k <= table_n + 64; ++k) {
            const double kd = static_cast<double>(k);
            const double q = std::pow(kd - 0.5, -law_.index) - std::pow(kd + 0.5, -law_.index);
            max_ratio = std::max(max_ratio, std::pow(kd, -s) / q);
        }
        tail_reject_bound_ = max_ratio * (1.0 + 1e-9);
    }
}

std::int64_t StepSampler::sample_tail(RngStream& stream) const {
    const double s = 1.0 + law_.index;
    const double k0 = static_cast<double>(cum_.size()) + 0.5;
    for (;;) {
        const double y = k0 * std::pow(stream.uniform01(), -1.0 / law_.index);
        const double kd = std::floor(y + 0.5);
        if (kd > 9.0e15) continue;  // keep well inside int64 range
        const double q = std::pow(kd - 0.5, -law_.index) - std::pow(kd + 0.5, -law_.index);
        const double accept = std::pow(kd, -s) / (q * tail_reject_bound_);
        if (stream.uniform01() < accept) return static_cast<std::int64_t>(kd);
    }
}

std::int64_t StepSampler::sample(RngStream& stream) const {
    const double u = stream.uniform01();
    if (u < law_.hold_prob) return 0;
    if (law_.kind == StepKind::LazySimple) {
        const double mid = law_.hold_prob + 0.5 * (1.0 - law_.hold_prob);
        return u < mid ? 1 : -1;
    }
    const double target = stream.uniform01() * support_sum_;
    std::int64_t mag;
    if (target >= cum_.back()) {
        mag = law_.tail_cut > 0 ? static_cast<std::int64_t>(cum_.size())
                                : sample_tail(stream);
    } else {
        const auto it = std::upper_bound(cum_.begin(), cum_.end(), target);
        mag = static_cast<std::int64_t>(it - cum_.begin()) + 1;
    }
    return stream.coin() ? mag : -mag;
}

double StepSampler::variance() const {
    if (law_.kind == StepKind::LazySimple) return 1.0 - law_.hold_prob;
    return std::numeric_limits<double>::infinity();
}

double StepSampler::normalizing_c() const {
    if (law_.kind == StepKind::LazySimple)
        throw std::logic_error("normalizing_c: LazySimple has no power tail");
    return (1.0 - law_.hold_prob) / (2.0 * support_sum_);
}

double StepSampler::tail_prob_ge(std::int64_t k) const {
    if (k <= 1) return 1.0 - law_.hold_prob;
    if (law_.kind == StepKind::LazySimple) return 0.0;
    const auto idx = static_cast<std::size_t>(k - 1);
    if (idx > cum_.size())
        throw std::out_of_range("tail_prob_ge: k beyond table");
    const double below = cum_[idx - 1];
    return (1.0 - law_.hold_prob) * (support_sum_ - below) / support_sum_;
}

void SceneryLaw::validate() const {
    if (!(scale > 0.0))
        throw std::invalid_argument("SceneryLaw: scale must be positive");
    if (kind == SceneryKind::SymmetricParetoReal) {
        if (!(index > 1.0) || !(index <= 2.0))
            throw std::invalid_argument(
                "SceneryLaw: SymmetricParetoReal requires index in (1, 2]");
    } else if (index != 2.0) {
        throw std::invalid_argument("SceneryLaw: Rademacher/Gaussian force index = 2");
    }
}

double SceneryLaw::variance() const {
    switch (kind) {
        case SceneryKind::Rademacher:
        case SceneryKind::Gaussian: return scale * scale;
        case SceneryKind::SymmetricParetoReal:
            return index < 2.0 ? std::numeric_limits<double>::infinity()
                               : std::numeric_limits<double>::quiet_NaN();
    }
    return 0.0;
}

double SceneryLaw::cdf(double x) const {
    switch (kind) {
        case SceneryKind::Rademacher:
            if (x < -scale) return 0.0;
            if (x < scale) return 0.5;
            return 1.0;
        case SceneryKind::Gaussian:
            return 0.5 * std::erfc(-x / (scale * std::sqrt(2.0)));
        case SceneryKind::SymmetricParetoReal: {
            const double z = x / scale;
            if (z <= -1.0) return 0.5 * std::pow(-z, -index);
            if (z < 1.0) return 0.5;
            return 1.0 - 0.5 * std::pow(z, -index);
        }
    }
    return 0.0;
}

double sample_scenery_value(const SceneryLaw& law, RngStream& stream) {
    law.validate();
    switch (law.kind) {
        case SceneryKind::Rademacher:
            return stream.coin() ? law.scale : -law.scale;
        case SceneryKind::Gaussian:
            return law.scale * stream.normal();
        case SceneryKind::SymmetricParetoReal: {
            // P(|xi| > x) = (x/scale)^{-beta} for x >= scale.
            const double mag = law.scale * std::pow(stream.uniform01(), -1.0 / law.index);
            return stream.coin() ? mag : -mag;
        }
    }
    return 0.0;
}

}  // namespace rwrs
