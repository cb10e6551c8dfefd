#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "seqpart/discrepancy.hpp"
#include "seqpart/geometry.hpp"
#include "seqpart/moments.hpp"

namespace seqpart {

enum class CriterionKind { star, mixture, moment };

struct UniformityCriterion {
    CriterionKind kind = CriterionKind::mixture;
    double theta = 0.1;      // star / mixture threshold scale
    MomentTolerances tol{};  // moment criterion tolerances
};

enum class WorkOrder { fifo, lifo, restart_scan };

struct EngineConfig {
    int m = 10;                        // candidate split count per axis is m-1
    std::uint32_t n_min = 10;          // leaves with n <= n_min terminate
    int max_depth = 50;
    std::uint64_t max_leaves = 1000000;
    std::uint64_t seed = 0;            // star heuristic seed material
    WorkOrder order = WorkOrder::fifo;
    double star_exact_budget = 1.5e8;
    int star_restarts = 100;
    int star_steps = 1000;
};

struct SplitChoice {
    int axis = 0;    // j0
    int index = 1;   // i0 in 1..m-1
    double value = 0.0;
    double score = 0.0;
};

/// Pick the candidate split s = lo + (i0/m) * width maximizing
/// |count(y_j0 < s)/n - i0/m|; ties break toward the smallest axis, then
/// the smallest index. Throws std::invalid_argument on an empty subset.
SplitChoice choose_split(const AxisBox& box, const SubsetView& subset, int m);

/// Split on axis j0 at s: the lower child takes [lo, s), the upper [s, hi).
/// Throws std::invalid_argument unless lo < s < hi on that axis.
std::pair<AxisBox, AxisBox> split_box(const AxisBox& box, int axis, double s);

/// Uniformity predicate for one leaf. For star/mixture the subset is
/// scaled to the unit cube and the discrepancy compared against
/// theta * sqrt(N) / n; the moment criterion tests in box coordinates.
bool is_uniform(const SubsetView& subset, const AxisBox& box,
                const UniformityCriterion& criterion, std::uint64_t total_n,
                const EngineConfig& config = {});

struct DensityLeaf {
    AxisBox box;
    double c = 0.0;          // count / (N * volume)
    std::uint64_t count = 0;
};

/// The piecewise constant estimator: disjoint leaves covering the domain,
/// plus the split tree for O(depth) point location.
class PiecewiseConstantDensity {
public:
    PiecewiseConstantDensity(AxisBox domain, std::uint64_t total_n,
                             std::vector<DensityLeaf> leaves,
                             bool truncated);

    const AxisBox& domain() const noexcept { return domain_; }
    std::uint64_t total_n() const noexcept { return total_n_; }
    bool truncated() const noexcept { return truncated_; }
    const std::vector<DensityLeaf>& leaves() const noexcept { return leaves_; }

    /// Density value at p; throws std::domain_error outside the domain.
    double value_at(std::span<const double> p) const;
    /// Index of the unique leaf containing p.
    std::size_t leaf_index_at(std::span<const double> p) const;

private:
    struct Node {
        int axis = -1;       // -1 marks a leaf node
        double split = 0.0;
        std::int64_t left = -1;   // child node index, or leaf index when axis == -1
        std::int64_t right = -1;
    };

    void build_lookup_tree();
    std::int64_t build_node(std::vector<std::uint32_t>& ids, const AxisBox& region);

    AxisBox domain_;
    std::uint64_t total_n_ = 0;
    bool truncated_ = false;
    std::vector<DensityLeaf> leaves_;
    std::vector<Node> nodes_;
};

/// Sequential binary partition driven by the uniformity criterion.
/// A leaf terminates when n == 0, n <= n_min, depth == max_depth, the
/// leaf budget is exhausted (sets the truncation flag), or it passes the
/// uniformity test; otherwise it splits and both children are enqueued.
/// Throws std::invalid_argument if any sample falls outside the domain.
PiecewiseConstantDensity estimate(const SampleSet& samples, const AxisBox& domain,
                                  const UniformityCriterion& criterion,
                                  const EngineConfig& config = {});

std::string to_string(CriterionKind kind);

}  // namespace seqpart
