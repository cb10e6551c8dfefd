#include "seqpart/moments.hpp"

#include <cmath>
#include <stdexcept>

namespace seqpart {

MomentSummary sample_moments(const SubsetView& points) {
    const std::size_t n = points.size();
    if (n == 0 || points.parent == nullptr) {
        throw std::invalid_argument("sample_moments: empty subset");
    }
    const int d = points.parent->dim();
    MomentSummary out;
    out.dim = d;
    out.mean.assign(static_cast<std::size_t>(d), 0.0);
    out.cov.assign(static_cast<std::size_t>(d) * static_cast<std::size_t>(d), 0.0);

    for (std::size_t k = 0; k < n; ++k) {
        const auto p = points.point(k);
        for (int j = 0; j < d; ++j) out.mean[static_cast<std::size_t>(j)] += p[static_cast<std::size_t>(j)];
    }
    for (int j = 0; j < d; ++j) out.mean[static_cast<std::size_t>(j)] /= static_cast<double>(n);

    std::vector<double> delta(static_cast<std::size_t>(d));
    for (std::size_t k = 0; k < n; ++k) {
        const auto p = points.point(k);
        for (int j = 0; j < d; ++j) {
            delta[static_cast<std::size_t>(j)] = p[static_cast<std::size_t>(j)] - out.mean[static_cast<std::size_t>(j)];
        }
        for (int i = 0; i < d; ++i) {
            for (int j = i; j < d; ++j) {
                out.cov[static_cast<std::size_t>(i) * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)] +=
                    delta[static_cast<std::size_t>(i)] * delta[static_cast<std::size_t>(j)];
            }
        }
    }
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            const double v =
                out.cov[static_cast<std::size_t>(i) * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)] /
                static_cast<double>(n);
            out.cov[static_cast<std::size_t>(i) * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)] = v;
            out.cov[static_cast<std::size_t>(j) * static_cast<std::size_t>(d) + static_cast<std::size_t>(i)] = v;
        }
    }
    return out;
}

MomentSummary uniform_moments(const AxisBox& box) {
    const int d = box.dim();
    MomentSummary out;
    out.dim = d;
    out.mean.resize(static_cast<std::size_t>(d));
    out.cov.assign(static_cast<std::size_t>(d) * static_cast<std::size_t>(d), 0.0);
    for (int j = 0; j < d; ++j) {
        out.mean[static_cast<std::size_t>(j)] = box.center(j);
        const double w = box.width(j);
        out.cov[static_cast<std::size_t>(j) * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)] =
            w * w / 12.0;
    }
    return out;
}

bool moment_uniformity_test(const SubsetView& points, const AxisBox& box,
                            const MomentTolerances& tol) {
    if (points.size() == 0) {
        throw std::invalid_argument("moment_uniformity_test: empty subset");
    }
    const MomentSummary hat = sample_moments(points);
    const MomentSummary uni = uniform_moments(box);
    const int d = box.dim();
    for (int j = 0; j < d; ++j) {
        if (!(std::abs(uni.mean[static_cast<std::size_t>(j)] - hat.mean[static_cast<std::size_t>(j)]) <
              tol.eps1 * box.width(j))) {
            return false;
        }
    }
    for (int j = 0; j < d; ++j) {
        if (!(std::abs(uni.cov_at(j, j) - hat.cov_at(j, j)) < tol.eps2 * std::abs(uni.cov_at(j, j)))) {
            return false;
        }
    }
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            if (i != j && !(std::abs(hat.cov_at(i, j)) < tol.eps3)) return false;
        }
    }
    return true;
}

}  // namespace seqpart
