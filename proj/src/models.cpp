#include "seqpart/models.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "seqpart/parallel.hpp"

namespace seqpart {

namespace {

constexpr std::size_t kSampleChunk = 65536;
constexpr double kMinAcceptanceRate = 1e-6;
constexpr std::uint64_t kAcceptanceProbe = 1000000;

// Lower Cholesky factor of a d x d SPD matrix (row-major).
std::vector<double> cholesky(const std::vector<double>& m, int d) {
    std::vector<double> lower(static_cast<std::size_t>(d) * static_cast<std::size_t>(d), 0.0);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = m[static_cast<std::size_t>(i) * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)];
            for (int k = 0; k < j; ++k) {
                s -= lower[static_cast<std::size_t>(i) * static_cast<std::size_t>(d) + static_cast<std::size_t>(k)] *
                     lower[static_cast<std::size_t>(j) * static_cast<std::size_t>(d) + static_cast<std::size_t>(k)];
            }
            if (i == j) {
                if (s <= 0.0) {
                    throw std::invalid_argument("covariance matrix is not positive definite");
                }
                lower[static_cast<std::size_t>(i) * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)] =
                    std::sqrt(s);
            } else {
                lower[static_cast<std::size_t>(i) * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)] =
                    s / lower[static_cast<std::size_t>(j) * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)];
            }
        }
    }
    return lower;
}

void validate_weights(const std::vector<double>& w) {
    if (w.empty()) throw std::invalid_argument("mixture needs at least one component");
    double sum = 0.0;
    for (double v : w) {
        if (v < 0.0) throw std::invalid_argument("mixture weights must be nonnegative");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("mixture weights must sum to 1");
    }
}

struct GaussianSampler {
    const GaussianMixtureSpec& spec;
    std::vector<std::vector<double>> chol;

    explicit GaussianSampler(const GaussianMixtureSpec& s) : spec(s) {
        const int d = s.dim();
        for (const auto& cov : s.covs) chol.push_back(cholesky(cov, d));
    }

    // One untruncated draw into out[0..d).
    void draw(std::mt19937_64& rng, std::normal_distribution<double>& normal,
              std::discrete_distribution<int>& pick, double* out) const {
        const int d = spec.dim();
        const int c = pick(rng);
        double z[64];
        for (int j = 0; j < d; ++j) z[j] = normal(rng);
        const auto& mu = spec.means[static_cast<std::size_t>(c)];
        const auto& lower = chol[static_cast<std::size_t>(c)];
        for (int i = 0; i < d; ++i) {
            double v = mu[static_cast<std::size_t>(i)];
            for (int k = 0; k <= i; ++k) {
                v += lower[static_cast<std::size_t>(i) * static_cast<std::size_t>(d) + static_cast<std::size_t>(k)] * z[k];
            }
            out[i] = v;
        }
    }
};

struct BetaSampler {
    const BetaMixtureSpec& spec;

    void draw(std::mt19937_64& rng, std::discrete_distribution<int>& pick, double* out) const {
        const int d = spec.dim();
        const int c = pick(rng);
        for (int j = 0; j < d; ++j) {
            const auto& sh = spec.components[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)];
            std::gamma_distribution<double> ga(sh.alpha, 1.0);
            std::gamma_distribution<double> gb(sh.beta, 1.0);
            const double a = ga(rng);
            const double b = gb(rng);
            out[j] = a + b > 0.0 ? a / (a + b) : 0.5;
        }
    }
};

double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

}  // namespace

int spec_dim(const ModelSpec& spec) {
    return std::visit([](const auto& s) { return s.dim(); }, spec);
}

AxisBox spec_domain(const ModelSpec& spec) {
    if (const auto* g = std::get_if<GaussianMixtureSpec>(&spec)) return g->domain;
    const int d = std::get<BetaMixtureSpec>(spec).dim();
    return AxisBox(std::vector<double>(static_cast<std::size_t>(d), 0.0),
                   std::vector<double>(static_cast<std::size_t>(d), 1.0));
}

NormalizerEstimate estimate_normalizer(const ModelSpec& spec, std::uint64_t mc_samples,
                                       std::uint64_t seed) {
    if (std::holds_alternative<BetaMixtureSpec>(spec)) {
        // Support is already the unit cube.
        return {1.0, 0.0, 0};
    }
    const auto& gspec = std::get<GaussianMixtureSpec>(spec);
    if (mc_samples < 10000) {
        throw std::invalid_argument("estimate_normalizer: need at least 1e4 draws");
    }
    validate_weights(gspec.weights);
    const int d = gspec.dim();
    const GaussianSampler sampler(gspec);
    const AxisBox& domain = gspec.domain;
    const UpperClosedFlags closed(static_cast<std::size_t>(d), 1);

    const std::size_t num_chunks = (mc_samples + kSampleChunk - 1) / kSampleChunk;
    std::vector<std::uint64_t> inside(num_chunks, 0);
    parallel_chunks(mc_samples, kSampleChunk, [&](std::size_t b, std::size_t e, std::size_t ci) {
        std::mt19937_64 rng(derive_seed(seed, 0x4e6f + ci));
        std::normal_distribution<double> normal(0.0, 1.0);
        std::discrete_distribution<int> pick(gspec.weights.begin(), gspec.weights.end());
        double x[64];
        std::uint64_t hits = 0;
        for (std::size_t i = b; i < e; ++i) {
            sampler.draw(rng, normal, pick, x);
            if (box_contains(domain, {x, static_cast<std::size_t>(d)}, closed)) ++hits;
        }
        inside[ci] = hits;
    });
    std::uint64_t total_inside = 0;
    for (std::uint64_t h : inside) total_inside += h;
    const double z = static_cast<double>(total_inside) / static_cast<double>(mc_samples);
    if (total_inside == 0) {
        throw std::runtime_error("estimate_normalizer: no mass inside the domain");
    }
    const double se = std::sqrt(z * (1.0 - z) / static_cast<double>(mc_samples));
    return {z, se, mc_samples};
}

ReferenceDensity::ReferenceDensity(ModelSpec spec, double normalizer)
    : spec_(std::move(spec)), normalizer_(normalizer) {
    if (!(normalizer_ > 0.0)) {
        throw std::invalid_argument("ReferenceDensity: normalizer must be positive");
    }
    if (const auto* g = std::get_if<GaussianMixtureSpec>(&spec_)) {
        validate_weights(g->weights);
        const int d = g->dim();
        for (const auto& cov : g->covs) {
            chol_.push_back(cholesky(cov, d));
            double log_det_sqrt = 0.0;
            for (int j = 0; j < d; ++j) {
                log_det_sqrt += std::log(chol_.back()[static_cast<std::size_t>(j) * static_cast<std::size_t>(d) +
                                                      static_cast<std::size_t>(j)]);
            }
            log_norm_const_.push_back(-0.5 * d * std::log(2.0 * M_PI) - log_det_sqrt);
        }
    } else {
        validate_weights(std::get<BetaMixtureSpec>(spec_).weights);
    }
}

double ReferenceDensity::log_normalizer() const { return std::log(normalizer_); }

double ReferenceDensity::pdf(std::span<const double> p) const {
    const AxisBox dom = domain();
    const int d = dom.dim();
    if (static_cast<int>(p.size()) != d) {
        throw std::invalid_argument("pdf: dimension mismatch");
    }
    const UpperClosedFlags closed(static_cast<std::size_t>(d), 1);
    if (!box_contains(dom, p, closed)) return 0.0;

    double value = 0.0;
    if (const auto* g = std::get_if<GaussianMixtureSpec>(&spec_)) {
        for (std::size_t c = 0; c < g->weights.size(); ++c) {
            const auto& mu = g->means[c];
            const auto& lower = chol_[c];
            // Solve L w = (p - mu); the quadratic form is |w|^2.
            double w[64];
            double quad = 0.0;
            for (int i = 0; i < d; ++i) {
                double s = p[static_cast<std::size_t>(i)] - mu[static_cast<std::size_t>(i)];
                for (int k = 0; k < i; ++k) {
                    s -= lower[static_cast<std::size_t>(i) * static_cast<std::size_t>(d) + static_cast<std::size_t>(k)] * w[k];
                }
                w[i] = s / lower[static_cast<std::size_t>(i) * static_cast<std::size_t>(d) + static_cast<std::size_t>(i)];
                quad += w[i] * w[i];
            }
            value += g->weights[c] * std::exp(log_norm_const_[c] - 0.5 * quad);
        }
    } else {
        const auto& b = std::get<BetaMixtureSpec>(spec_);
        for (std::size_t c = 0; c < b.weights.size(); ++c) {
            double log_dens = 0.0;
            bool interior = true;
            double boundary_factor = 1.0;
            for (int j = 0; j < d; ++j) {
                const auto& sh = b.components[c][static_cast<std::size_t>(j)];
                const double x = p[static_cast<std::size_t>(j)];
                if (x > 0.0 && x < 1.0) {
                    log_dens += (sh.alpha - 1.0) * std::log(x) + (sh.beta - 1.0) * std::log1p(-x) -
                                log_beta(sh.alpha, sh.beta);
                } else {
                    interior = false;
                    boundary_factor *= std::pow(x, sh.alpha - 1.0) *
                                       std::pow(1.0 - x, sh.beta - 1.0) /
                                       std::exp(log_beta(sh.alpha, sh.beta));
                }
            }
            value += b.weights[c] * (interior ? std::exp(log_dens)
                                              : boundary_factor * std::exp(log_dens));
        }
    }
    return value / normalizer_;
}

SampleSet draw_samples(const ModelSpec& spec, std::uint64_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("draw_samples: need n >= 1");
    const int d = spec_dim(spec);
    const AxisBox domain = spec_domain(spec);
    const UpperClosedFlags closed(static_cast<std::size_t>(d), 1);
    std::vector<double> data(n * static_cast<std::uint64_t>(d));

    const std::size_t num_chunks = (n + kSampleChunk - 1) / kSampleChunk;
    std::vector<std::uint8_t> degenerate(num_chunks, 0);

    auto fill_chunk = [&](std::size_t b, std::size_t e, std::size_t ci, auto&& draw_one) {
        std::mt19937_64 rng(derive_seed(seed, 0x5a3c + ci));
        std::uint64_t attempts = 0;
        std::uint64_t accepted = 0;
        double x[64];
        for (std::size_t i = b; i < e;) {
            draw_one(rng, x);
            ++attempts;
            if (box_contains(domain, {x, static_cast<std::size_t>(d)}, closed)) {
                ++accepted;
                std::copy(x, x + d, data.begin() + static_cast<std::ptrdiff_t>(i * static_cast<std::size_t>(d)));
                ++i;
            } else if (attempts >= kAcceptanceProbe &&
                       static_cast<double>(accepted) < kMinAcceptanceRate * static_cast<double>(attempts)) {
                degenerate[ci] = 1;
                return;
            }
        }
    };

    if (const auto* g = std::get_if<GaussianMixtureSpec>(&spec)) {
        validate_weights(g->weights);
        const GaussianSampler sampler(*g);
        parallel_chunks(n, kSampleChunk, [&](std::size_t b, std::size_t e, std::size_t ci) {
            std::normal_distribution<double> normal(0.0, 1.0);
            std::discrete_distribution<int> pick(g->weights.begin(), g->weights.end());
            fill_chunk(b, e, ci, [&](std::mt19937_64& rng, double* x) {
                sampler.draw(rng, normal, pick, x);
            });
        });
    } else {
        const auto& bspec = std::get<BetaMixtureSpec>(spec);
        validate_weights(bspec.weights);
        const BetaSampler sampler{bspec};
        parallel_chunks(n, kSampleChunk, [&](std::size_t b, std::size_t e, std::size_t ci) {
            std::discrete_distribution<int> pick(bspec.weights.begin(), bspec.weights.end());
            fill_chunk(b, e, ci, [&](std::mt19937_64& rng, double* x) {
                sampler.draw(rng, pick, x);
            });
        });
    }

    for (std::uint8_t flag : degenerate) {
        if (flag) {
            throw std::runtime_error("draw_samples: acceptance rate below 1e-6, truncation is degenerate");
        }
    }
    return SampleSet(d, std::move(data));
}

namespace {

AxisBox unit_box(int d) {
    return AxisBox(std::vector<double>(static_cast<std::size_t>(d), 0.0),
                   std::vector<double>(static_cast<std::size_t>(d), 1.0));
}

std::vector<double> iso_cov(int d, double var) {
    std::vector<double> cov(static_cast<std::size_t>(d) * static_cast<std::size_t>(d), 0.0);
    for (int j = 0; j < d; ++j) {
        cov[static_cast<std::size_t>(j) * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)] = var;
    }
    return cov;
}

}  // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"gauss2d", "gaussmix2d", "betamix2d",
                                                   "gaussmixNd", "betamixNd"};
    return names;
}

ModelSpec preset_spec(const std::string& name, int d) {
    if (name == "gauss2d") {
        GaussianMixtureSpec s{{1.0}, {{0.5, 0.5}}, {{0.08, 0.02, 0.02, 0.02}}, unit_box(2)};
        return s;
    }
    if (name == "gaussmix2d") {
        GaussianMixtureSpec s{{0.5, 0.5},
                              {{0.5, 0.25}, {0.5, 0.75}},
                              {{0.04, 0.01, 0.01, 0.01}, {0.04, 0.01, 0.01, 0.01}},
                              unit_box(2)};
        return s;
    }
    if (name == "betamix2d") {
        BetaMixtureSpec s;
        s.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
        s.components = {{{2, 5}, {5, 2}}, {{4, 2}, {2, 4}}, {{1, 3}, {3, 1}}};
        return s;
    }
    if (name == "gaussmixNd") {
        if (d < 1) throw std::invalid_argument("gaussmixNd needs a dimension");
        GaussianMixtureSpec s{{0.4, 0.3, 0.2, 0.1}, {}, {}, unit_box(d)};
        for (double center : {0.3, 0.4, 0.5, 0.6}) {
            s.means.emplace_back(static_cast<std::size_t>(d), center);
        }
        for (double var : {0.01, 0.02, 0.01, 0.02}) {
            s.covs.push_back(iso_cov(d, var));
        }
        return s;
    }
    if (name == "betamixNd") {
        if (d < 1) throw std::invalid_argument("betamixNd needs a dimension");
        BetaMixtureSpec s;
        s.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
        for (auto [a, b] : {std::pair{15.0, 5.0}, std::pair{10.0, 10.0}, std::pair{5.0, 15.0}}) {
            s.components.emplace_back(static_cast<std::size_t>(d), BetaMixtureSpec::Shape{a, b});
        }
        return s;
    }
    throw std::invalid_argument("unknown preset: " + name);
}

}  // namespace seqpart
