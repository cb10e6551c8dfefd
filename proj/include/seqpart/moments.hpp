#pragma once

#include <vector>

#include "seqpart/geometry.hpp"

namespace seqpart {

/// First and second moments: mean vector plus covariance matrix with the
/// biased 1/n normalization.
struct MomentSummary {
    int dim = 0;
    std::vector<double> mean;
    std::vector<double> cov;  // d x d, row-major

    double cov_at(int i, int j) const {
        return cov[static_cast<std::size_t>(i) * static_cast<std::size_t>(dim) +
                   static_cast<std::size_t>(j)];
    }
};

struct MomentTolerances {
    double eps1 = 0.1;
    double eps2 = 0.1;
    double eps3 = 0.1;
};

/// Two-pass sample mean and biased covariance. Throws std::invalid_argument
/// on an empty subset.
MomentSummary sample_moments(const SubsetView& points);

/// Moments of the uniform distribution on the box: mean (a+b)/2, diagonal
/// variance (b-a)^2/12, zero off-diagonals.
MomentSummary uniform_moments(const AxisBox& box);

/// Moment-gap uniformity test in box coordinates:
///   |mu_j - mu^_j|      < eps1 * (b_j - a_j)   for every axis,
///   |Sig_jj - Sig^_jj|  < eps2 * |Sig_jj|      for every axis,
///   |Sig^_ij|           < eps3                 for every i != j.
/// The off-diagonal clause is absolute, not scale-relative.
bool moment_uniformity_test(const SubsetView& points, const AxisBox& box,
                            const MomentTolerances& tol);

}  // namespace seqpart
