#pragma once

// Symmetric bivariate kernels, their Hoeffding decomposition
// h(x,y) = h1(x) + h1(y) + h2(x,y) with h1(x) = E h(x, xi), and the
// level-l truncation machinery (threshold a_l, truncated parts).

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rwrs/rng.hpp"
#include "rwrs/stable.hpp"

namespace rwrs {

enum class KernelKind { Sum, Product, ProductPlusSum, BoundedSignProduct, Custom };
enum class H1Mode { Analytic, MonteCarloEstimated };

using KernelFn = double (*)(double, double);

// Compile-time extension point for custom symmetric kernels.
void register_custom_kernel(const std::string& name, KernelFn fn);
const std::map<std::string, KernelFn>& custom_kernels();

struct KernelSpec {
    KernelKind kind = KernelKind::ProductPlusSum;
    H1Mode h1_mode = H1Mode::Analytic;
    int h1_samples = 4096;
    double centering = 0.0;  // subtracted so that E h = 0
    std::string custom_name;

    void validate() const;
};

class Kernel {
  public:
    explicit Kernel(const KernelSpec& spec);

    // Centered kernel value h(x,y) - centering.
    double eval(double x, double y) const {
        double v;
        switch (spec_.kind) {
            case KernelKind::Sum: v = x + y; break;
            case KernelKind::Product: v = x * y; break;
            case KernelKind::ProductPlusSum: v = x * y + (x + y); break;
            case KernelKind::BoundedSignProduct:
                v = sign(x) * sign(y);
                break;
            default: v = custom_fn_(x, y); break;
        }
        return v - spec_.centering;
    }

    const KernelSpec& spec() const { return spec_; }

    // Presets admit O(1)-per-step evaluation from running scenery sums.
    bool separable() const { return spec_.kind != KernelKind::Custom; }

    // Whether E|h(xi, xi)| is finite under the given scenery law; the
    // Product/ProductPlusSum diagonal needs E xi^2, infinite for the
    // Pareto scenery with index < 2.
    bool diagonal_integrable(const SceneryLaw& law) const;

    static double sign(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

  private:
    KernelSpec spec_;
    KernelFn custom_fn_ = nullptr;
};

// h1 representation: identically zero, the identity map (minus centering),
// or a frozen Monte Carlo table.
class HoeffdingParts {
  public:
    double h1(double x) const {
        switch (mode_) {
            case Mode::Zero: return -centering_;
            case Mode::Identity: return x - centering_;
            case Mode::MonteCarlo: {
                double acc = 0.0;
                for (double d : draws_) acc += base_(x, d);
                return acc / static_cast<double>(draws_.size()) - centering_;
            }
        }
        return 0.0;
    }

    double h2(double x, double y) const {
        return kernel_->eval(x, y) - h1(x) - h1(y);
    }

    bool h1_zero() const { return mode_ == Mode::Zero && centering_ == 0.0; }
    bool h2_zero() const { return h2_identically_zero_; }
    const std::string& warning() const { return warning_; }
    const std::vector<double>& frozen_draws() const { return draws_; }

  private:
    friend HoeffdingParts hoeffding_split(const Kernel&, const SceneryLaw&);

    enum class Mode { Zero, Identity, MonteCarlo };
    const Kernel* kernel_ = nullptr;
    Mode mode_ = Mode::Zero;
    double centering_ = 0.0;
    bool h2_identically_zero_ = false;
    KernelFn base_ = nullptr;  // uncentered kernel, MonteCarlo mode only
    std::vector<double> draws_;
    std::string warning_;
};

// Analytic closed forms for the presets under centered sceneries
// (Sum: h1(x) = x, h2 = 0; Product: h1 = 0, h2 = xy; ProductPlusSum:
// h1(x) = x, h2 = xy; BoundedSignProduct: h1 = 0). MonteCarloEstimated
// mode freezes h1_samples scenery draws under a fixed build-level seed so
// that h1 stays a deterministic function.
HoeffdingParts hoeffding_split(const Kernel& kernel, const SceneryLaw& scenery_law);

// Level-l truncated kernel: h0 zeroes h where |h| > a_l with
// a_l = 2^{l (1+beta')/(alpha' beta')}; h1l(x) = E h0(x, xi) (exact two-point
// expectation for Rademacher, frozen Monte Carlo otherwise);
// h2l = h0 - h1l(x) - h1l(y), bounded by 3 a_l.
class TruncatedKernel {
  public:
    TruncatedKernel(const Kernel& base, const SceneryLaw& scenery_law, int level,
                    double alpha_prime, double beta_prime);

    double threshold() const { return a_l_; }
    int level() const { return level_; }

    double h0(double x, double y) const {
        const double v = base_->eval(x, y);
        return std::abs(v) <= a_l_ ? v : 0.0;
    }

    double h1l(double x) const {
        if (two_point_) {
            return 0.5 * (h0(x, point_) + h0(x, -point_));
        }
        double acc = 0.0;
        for (double d : draws_) acc += h0(x, d);
        return acc / static_cast<double>(draws_.size());
    }

    double h2l(double x, double y) const { return h0(x, y) - h1l(x) - h1l(y); }

  private:
    const Kernel* base_;
    int level_;
    double a_l_;
    bool two_point_ = false;
    double point_ = 1.0;
    std::vector<double> draws_;
};

TruncatedKernel truncate_kernel(const Kernel& base, const SceneryLaw& scenery_law,
                                int level, double alpha_prime, double beta_prime);

// a_l = 2^{l (1 + beta') / (alpha' beta')}
double truncation_threshold(int level, double alpha_prime, double beta_prime);

// eta = 2 beta' / (1 + beta'); the moment order of the truncation bound.
double truncation_eta(double beta_prime);

const char* to_string(KernelKind kind);
const char* to_string(H1Mode mode);

}  // namespace rwrs
