#include "seqpart/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace seqpart {

AxisBox::AxisBox(std::vector<double> lo, std::vector<double> hi)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.empty() || lo_.size() != hi_.size()) {
        throw std::invalid_argument("AxisBox: lo/hi must be non-empty and equal length");
    }
    for (std::size_t j = 0; j < lo_.size(); ++j) {
        if (!std::isfinite(lo_[j]) || !std::isfinite(hi_[j]) || !(lo_[j] < hi_[j])) {
            throw std::invalid_argument("AxisBox: need lo[j] < hi[j] on axis " +
                                        std::to_string(j));
        }
    }
}

double AxisBox::volume() const {
    double v = 1.0;
    for (int j = 0; j < dim(); ++j) v *= width(j);
    return v;
}

UpperClosedFlags upper_closed_flags(const AxisBox& box, const AxisBox& domain) {
    if (box.dim() != domain.dim()) {
        throw std::invalid_argument("upper_closed_flags: dimension mismatch");
    }
    UpperClosedFlags flags(static_cast<std::size_t>(box.dim()), 0);
    for (int j = 0; j < box.dim(); ++j) {
        // Children inherit the parent's bound values bit for bit, so exact
        // comparison identifies faces lying on the domain boundary.
        flags[static_cast<std::size_t>(j)] = box.hi(j) == domain.hi(j) ? 1 : 0;
    }
    return flags;
}

bool box_contains(const AxisBox& box, std::span<const double> p,
                  const UpperClosedFlags& closed_above) {
    if (static_cast<int>(p.size()) != box.dim() ||
        closed_above.size() != p.size()) {
        throw std::invalid_argument("box_contains: dimension mismatch");
    }
    for (int j = 0; j < box.dim(); ++j) {
        const double x = p[static_cast<std::size_t>(j)];
        if (x < box.lo(j)) return false;
        if (closed_above[static_cast<std::size_t>(j)] ? x > box.hi(j) : x >= box.hi(j)) {
            return false;
        }
    }
    return true;
}

SampleSet::SampleSet(int dim, std::vector<double> row_major_data)
    : dim_(dim), data_(std::move(row_major_data)) {
    if (dim_ < 1) throw std::invalid_argument("SampleSet: dimension must be >= 1");
    if (data_.size() % static_cast<std::size_t>(dim_) != 0) {
        throw std::invalid_argument("SampleSet: data size not a multiple of dim");
    }
    count_ = data_.size() / static_cast<std::size_t>(dim_);
    for (double v : data_) {
        if (!std::isfinite(v)) throw std::invalid_argument("SampleSet: non-finite coordinate");
    }
}

SubsetView full_view(const SampleSet& samples) {
    SubsetView view;
    view.parent = &samples;
    view.idx.resize(samples.count());
    for (std::uint64_t i = 0; i < samples.count(); ++i) {
        view.idx[i] = static_cast<std::uint32_t>(i);
    }
    return view;
}

UnitPointSet reflect_unit_axis(const UnitPointSet& pts, int axis) {
    UnitPointSet out = pts;
    for (std::size_t i = 0; i < out.size(); ++i) {
        auto& v = out.pts[i * static_cast<std::size_t>(out.dim) + static_cast<std::size_t>(axis)];
        v = 1.0 - v;
    }
    return out;
}

UnitPointSet rotate_unit_plane(const UnitPointSet& pts, int axis_i, int axis_j) {
    UnitPointSet out = pts;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const std::size_t base = i * static_cast<std::size_t>(out.dim);
        const double yi = out.pts[base + static_cast<std::size_t>(axis_i)];
        const double yj = out.pts[base + static_cast<std::size_t>(axis_j)];
        out.pts[base + static_cast<std::size_t>(axis_i)] = yj;
        out.pts[base + static_cast<std::size_t>(axis_j)] = 1.0 - yi;
    }
    return out;
}

UnitPointSet permute_axes(const UnitPointSet& pts, std::span<const int> perm) {
    if (static_cast<int>(perm.size()) != pts.dim) {
        throw std::invalid_argument("permute_axes: permutation length mismatch");
    }
    UnitPointSet out = pts;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const std::size_t base = i * static_cast<std::size_t>(out.dim);
        for (int j = 0; j < pts.dim; ++j) {
            out.pts[base + static_cast<std::size_t>(j)] =
                pts.pts[base + static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])];
        }
    }
    return out;
}

UnitPointSet scale_to_unit(const SubsetView& points, const AxisBox& box) {
    const int d = box.dim();
    if (points.parent == nullptr || points.parent->dim() != d) {
        throw std::invalid_argument("scale_to_unit: dimension mismatch");
    }
    UnitPointSet out;
    out.dim = d;
    out.pts.resize(points.size() * static_cast<std::size_t>(d));
    std::size_t w = 0;
    for (std::size_t k = 0; k < points.size(); ++k) {
        const auto p = points.point(k);
        for (int j = 0; j < d; ++j) {
            const double u = (p[static_cast<std::size_t>(j)] - box.lo(j)) / box.width(j);
            if (u < 0.0 || u > 1.0) {
                throw std::domain_error("scale_to_unit: point outside box");
            }
            out.pts[w++] = u;
        }
    }
    return out;
}

}  // namespace seqpart
