#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "seqpart/geometry.hpp"

namespace seqpart {

/// Mixture of multivariate Gaussians truncated to an axis-aligned domain.
struct GaussianMixtureSpec {
    std::vector<double> weights;                 // nonnegative, sum 1
    std::vector<std::vector<double>> means;      // one d-vector per component
    std::vector<std::vector<double>> covs;       // d x d row-major, SPD
    AxisBox domain;

    int dim() const noexcept { return domain.dim(); }
};

/// Mixture of per-axis Beta products on the unit cube.
struct BetaMixtureSpec {
    struct Shape {
        double alpha = 1.0;
        double beta = 1.0;
    };
    std::vector<double> weights;
    std::vector<std::vector<Shape>> components;  // [component][axis]

    int dim() const noexcept {
        return components.empty() ? 0 : static_cast<int>(components.front().size());
    }
};

using ModelSpec = std::variant<GaussianMixtureSpec, BetaMixtureSpec>;

int spec_dim(const ModelSpec& spec);
AxisBox spec_domain(const ModelSpec& spec);

struct NormalizerEstimate {
    double z = 1.0;
    double std_error = 0.0;
    std::uint64_t draws = 0;
};

/// Monte Carlo estimate of the truncated mass Z = P(untruncated draw lands
/// in the domain), with its binomial standard error. Beta specs on the unit
/// cube are exactly 1 and skip the sampling. Throws std::runtime_error when
/// the estimate is zero.
NormalizerEstimate estimate_normalizer(const ModelSpec& spec,
                                       std::uint64_t mc_samples,
                                       std::uint64_t seed);

/// A model spec paired with the truncation normalizer used by pdf().
class ReferenceDensity {
public:
    /// normalizer Z = 1 reproduces the raw mixture density (the form the
    /// published benchmark errors are measured against); pass an
    /// estimate_normalizer() result to evaluate the proper truncated density.
    explicit ReferenceDensity(ModelSpec spec, double normalizer = 1.0);

    const ModelSpec& spec() const noexcept { return spec_; }
    double normalizer() const noexcept { return normalizer_; }
    double log_normalizer() const;
    AxisBox domain() const { return spec_domain(spec_); }

    /// Mixture density divided by the normalizer; 0 outside the domain.
    double pdf(std::span<const double> p) const;

private:
    ModelSpec spec_;
    double normalizer_ = 1.0;
    // Cached per-component Cholesky factors and log-normalization constants
    // for Gaussian specs.
    std::vector<std::vector<double>> chol_;
    std::vector<double> log_norm_const_;
};

/// N i.i.d. draws by component choice + rejection against the domain.
/// Deterministic for a fixed seed, independent of worker count (samples
/// are generated in fixed-size chunks with per-chunk derived streams).
/// Throws std::runtime_error if the acceptance rate collapses (< 1e-6).
SampleSet draw_samples(const ModelSpec& spec, std::uint64_t n, std::uint64_t seed);

/// Named presets used by the benchmark tables: gauss2d, gaussmix2d,
/// betamix2d, gaussmixNd, betamixNd. The Nd presets take the dimension.
ModelSpec preset_spec(const std::string& name, int d = 2);

const std::vector<std::string>& preset_names();

}  // namespace seqpart
