#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace seqpart {

/// Axis-aligned box: the sub-domains produced by the partition engine.
/// Invariant: lo[j] < hi[j] on every axis, so the volume is strictly positive.
class AxisBox {
public:
    AxisBox(std::vector<double> lo, std::vector<double> hi);

    int dim() const noexcept { return static_cast<int>(lo_.size()); }
    double lo(int j) const { return lo_[static_cast<std::size_t>(j)]; }
    double hi(int j) const { return hi_[static_cast<std::size_t>(j)]; }
    const std::vector<double>& lo_vec() const noexcept { return lo_; }
    const std::vector<double>& hi_vec() const noexcept { return hi_; }

    double width(int j) const { return hi(j) - lo(j); }
    double center(int j) const { return 0.5 * (lo(j) + hi(j)); }
    double volume() const;

private:
    std::vector<double> lo_;
    std::vector<double> hi_;
};

/// Per-axis flags marking where a box's upper face coincides with the
/// estimation domain's upper face. Containment is half-open [lo, hi)
/// except on those axes, which are closed so the domain is covered.
using UpperClosedFlags = std::vector<std::uint8_t>;

UpperClosedFlags upper_closed_flags(const AxisBox& box, const AxisBox& domain);

/// Half-open containment test. Throws std::invalid_argument on dimension
/// mismatch between box, point, and flags.
bool box_contains(const AxisBox& box, std::span<const double> p,
                  const UpperClosedFlags& closed_above);

/// Immutable N x d sample matrix, row-major (one point per row).
class SampleSet {
public:
    SampleSet(int dim, std::vector<double> row_major_data);

    int dim() const noexcept { return dim_; }
    std::uint64_t count() const noexcept { return count_; }

    std::span<const double> row(std::uint64_t i) const {
        return {data_.data() + i * static_cast<std::uint64_t>(dim_),
                static_cast<std::size_t>(dim_)};
    }
    double at(std::uint64_t i, int j) const {
        return data_[i * static_cast<std::uint64_t>(dim_) + static_cast<std::uint64_t>(j)];
    }
    const std::vector<double>& data() const noexcept { return data_; }

private:
    int dim_;
    std::uint64_t count_;
    std::vector<double> data_;
};

/// Index view into a SampleSet; the engine partitions these rather than
/// copying point rows. Indices are strictly increasing.
struct SubsetView {
    const SampleSet* parent = nullptr;
    std::vector<std::uint32_t> idx;

    std::size_t size() const noexcept { return idx.size(); }
    std::span<const double> point(std::size_t k) const { return parent->row(idx[k]); }
    double at(std::size_t k, int j) const { return parent->at(idx[k], j); }
};

SubsetView full_view(const SampleSet& samples);

/// n x d matrix of points inside the unit cube, the input of the
/// discrepancy kernels.
struct UnitPointSet {
    int dim = 0;
    std::vector<double> pts;  // row-major

    std::size_t size() const noexcept {
        return dim == 0 ? 0 : pts.size() / static_cast<std::size_t>(dim);
    }
    double at(std::size_t i, int j) const {
        return pts[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(j)];
    }
};

/// Affine map of the subset onto [0,1]^d: (y - lo) / (hi - lo) per axis.
/// Throws std::domain_error if a point lies outside the box, which would
/// mean the partition bookkeeping is broken.
UnitPointSet scale_to_unit(const SubsetView& points, const AxisBox& box);

// Symmetry transforms of the unit cube, the moves behind the invariance
// checks: reflection about a mid-plane, the 90-degree rotation in one
// coordinate plane about the cube center, and an axis permutation.
UnitPointSet reflect_unit_axis(const UnitPointSet& pts, int axis);
UnitPointSet rotate_unit_plane(const UnitPointSet& pts, int axis_i, int axis_j);
UnitPointSet permute_axes(const UnitPointSet& pts, std::span<const int> perm);

}  // namespace seqpart
