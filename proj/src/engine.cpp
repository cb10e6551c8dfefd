#include "seqpart/engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>

#include "seqpart/parallel.hpp"

namespace seqpart {

namespace {

std::uint64_t hash_box(const AxisBox& box, std::uint64_t salt) {
    std::uint64_t h = salt;
    for (int j = 0; j < box.dim(); ++j) {
        h = splitmix64(h ^ std::bit_cast<std::uint64_t>(box.lo(j)));
        h = splitmix64(h ^ std::bit_cast<std::uint64_t>(box.hi(j)));
    }
    return h;
}

}  // namespace

std::string to_string(CriterionKind kind) {
    switch (kind) {
        case CriterionKind::star: return "star";
        case CriterionKind::mixture: return "mixture";
        case CriterionKind::moment: return "moment";
    }
    return "?";
}

SplitChoice choose_split(const AxisBox& box, const SubsetView& subset, int m) {
    const std::size_t n = subset.size();
    if (n == 0) throw std::invalid_argument("choose_split: empty subset");
    if (m < 2) throw std::invalid_argument("choose_split: m must be >= 2");
    const int d = box.dim();

    SplitChoice best;
    best.score = -1.0;
    std::vector<double> cuts(static_cast<std::size_t>(m - 1));
    std::vector<std::uint64_t> hist(static_cast<std::size_t>(m), 0);
    for (int j = 0; j < d; ++j) {
        for (int i = 1; i < m; ++i) {
            cuts[static_cast<std::size_t>(i - 1)] =
                box.lo(j) + (static_cast<double>(i) / m) * box.width(j);
        }
        std::fill(hist.begin(), hist.end(), 0);
        for (std::size_t k = 0; k < n; ++k) {
            const double y = subset.at(k, j);
            // Number of candidates <= y; the point counts below cut i iff
            // fewer than i candidates are <= y, matching the strict-< rule.
            const auto u = static_cast<std::size_t>(
                std::upper_bound(cuts.begin(), cuts.end(), y) - cuts.begin());
            ++hist[u];
        }
        std::uint64_t below = 0;
        for (int i = 1; i < m; ++i) {
            below += hist[static_cast<std::size_t>(i - 1)];
            const double score = std::abs(static_cast<double>(below) / static_cast<double>(n) -
                                          static_cast<double>(i) / m);
            if (score > best.score) {
                best.score = score;
                best.axis = j;
                best.index = i;
                best.value = cuts[static_cast<std::size_t>(i - 1)];
            }
        }
    }
    return best;
}

std::pair<AxisBox, AxisBox> split_box(const AxisBox& box, int axis, double s) {
    if (axis < 0 || axis >= box.dim()) {
        throw std::invalid_argument("split_box: axis out of range");
    }
    if (!(box.lo(axis) < s && s < box.hi(axis))) {
        throw std::invalid_argument("split_box: split value outside the open interval");
    }
    std::vector<double> lo1 = box.lo_vec(), hi1 = box.hi_vec();
    std::vector<double> lo2 = box.lo_vec(), hi2 = box.hi_vec();
    hi1[static_cast<std::size_t>(axis)] = s;
    lo2[static_cast<std::size_t>(axis)] = s;
    return {AxisBox(std::move(lo1), std::move(hi1)), AxisBox(std::move(lo2), std::move(hi2))};
}

bool is_uniform(const SubsetView& subset, const AxisBox& box,
                const UniformityCriterion& criterion, std::uint64_t total_n,
                const EngineConfig& config) {
    const std::size_t n = subset.size();
    if (n == 0) throw std::invalid_argument("is_uniform: empty subset");

    if (criterion.kind == CriterionKind::moment) {
        return moment_uniformity_test(subset, box, criterion.tol);
    }

    const double tau =
        criterion.theta * std::sqrt(static_cast<double>(total_n)) / static_cast<double>(n);
    const UnitPointSet scaled = scale_to_unit(subset, box);

    if (criterion.kind == CriterionKind::mixture) {
        if (n >= 4096) {
            // A certified lower bound above the threshold settles the test
            // without the O(n^2) sum. The margin keeps borderline cases on
            // the exact path.
            if (mixture_discrepancy_lower_bound(scaled) > tau * 1.000001) return false;
        }
        return mixture_discrepancy(scaled) <= tau;
    }

    // star
    if (star_exact_work(scaled) <= config.star_exact_budget) {
        return star_discrepancy_exact(scaled, config.star_exact_budget).value <= tau;
    }
    StarHeuristicConfig hcfg;
    hcfg.restarts = config.star_restarts;
    hcfg.steps = config.star_steps;
    hcfg.seed = derive_seed(config.seed, hash_box(box, n));
    hcfg.stop_above = tau;  // any witness above tau already fails the leaf
    return star_discrepancy_heuristic(scaled, hcfg).value <= tau;
}

// ---- piecewise constant density ---------------------------------------

PiecewiseConstantDensity::PiecewiseConstantDensity(AxisBox domain, std::uint64_t total_n,
                                                   std::vector<DensityLeaf> leaves,
                                                   bool truncated)
    : domain_(std::move(domain)),
      total_n_(total_n),
      truncated_(truncated),
      leaves_(std::move(leaves)) {
    if (leaves_.empty()) {
        throw std::invalid_argument("PiecewiseConstantDensity: no leaves");
    }
    build_lookup_tree();
}

void PiecewiseConstantDensity::build_lookup_tree() {
    // Rebuild a binary split tree over the leaf boxes. Any separating
    // axis-aligned plane routes points the same way the original splits
    // did, because the split values are carried bit-exactly by the boxes.
    struct Task {
        std::vector<std::uint32_t> ids;
        std::int64_t slot;
    };
    nodes_.clear();
    std::vector<Task> stack;
    std::vector<std::uint32_t> all(leaves_.size());
    for (std::size_t i = 0; i < leaves_.size(); ++i) all[i] = static_cast<std::uint32_t>(i);
    nodes_.emplace_back();
    stack.push_back({std::move(all), 0});

    std::vector<std::uint32_t> order;
    while (!stack.empty()) {
        Task task = std::move(stack.back());
        stack.pop_back();
        if (task.ids.size() == 1) {
            nodes_[static_cast<std::size_t>(task.slot)].axis = -1;
            nodes_[static_cast<std::size_t>(task.slot)].left = task.ids[0];
            continue;
        }
        const int d = domain_.dim();
        int cut_axis = -1;
        double cut = 0.0;
        for (int j = 0; j < d && cut_axis < 0; ++j) {
            order = task.ids;
            std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
                return leaves_[a].box.lo(j) < leaves_[b].box.lo(j);
            });
            double max_hi = leaves_[order[0]].box.hi(j);
            for (std::size_t k = 1; k < order.size(); ++k) {
                const double next_lo = leaves_[order[k]].box.lo(j);
                if (max_hi <= next_lo) {
                    cut_axis = j;
                    cut = next_lo;
                    break;
                }
                max_hi = std::max(max_hi, leaves_[order[k]].box.hi(j));
            }
        }
        if (cut_axis < 0) {
            throw std::logic_error("PiecewiseConstantDensity: leaves do not form a binary partition");
        }
        Task left, right;
        for (std::uint32_t id : task.ids) {
            if (leaves_[id].box.hi(cut_axis) <= cut) {
                left.ids.push_back(id);
            } else {
                right.ids.push_back(id);
            }
        }
        const std::int64_t left_slot = static_cast<std::int64_t>(nodes_.size());
        nodes_.emplace_back();
        const std::int64_t right_slot = static_cast<std::int64_t>(nodes_.size());
        nodes_.emplace_back();
        Node& node = nodes_[static_cast<std::size_t>(task.slot)];
        node.axis = cut_axis;
        node.split = cut;
        node.left = left_slot;
        node.right = right_slot;
        left.slot = left_slot;
        right.slot = right_slot;
        stack.push_back(std::move(left));
        stack.push_back(std::move(right));
    }
}

std::size_t PiecewiseConstantDensity::leaf_index_at(std::span<const double> p) const {
    if (static_cast<int>(p.size()) != domain_.dim()) {
        throw std::invalid_argument("leaf_index_at: dimension mismatch");
    }
    for (int j = 0; j < domain_.dim(); ++j) {
        const double x = p[static_cast<std::size_t>(j)];
        if (x < domain_.lo(j) || x > domain_.hi(j)) {
            throw std::domain_error("leaf_index_at: point outside the domain");
        }
    }
    std::size_t at = 0;
    while (nodes_[at].axis >= 0) {
        const Node& node = nodes_[at];
        at = static_cast<std::size_t>(
            p[static_cast<std::size_t>(node.axis)] < node.split ? node.left : node.right);
    }
    return static_cast<std::size_t>(nodes_[at].left);
}

double PiecewiseConstantDensity::value_at(std::span<const double> p) const {
    return leaves_[leaf_index_at(p)].c;
}

// ---- the sequential partition engine -----------------------------------

namespace {

struct WorkItem {
    AxisBox box;
    SubsetView subset;
    int depth = 0;
};

}  // namespace

PiecewiseConstantDensity estimate(const SampleSet& samples, const AxisBox& domain,
                                  const UniformityCriterion& criterion,
                                  const EngineConfig& config) {
    const std::uint64_t total_n = samples.count();
    if (total_n == 0) throw std::invalid_argument("estimate: need at least one sample");
    if (samples.dim() != domain.dim()) throw std::invalid_argument("estimate: dimension mismatch");
    if (config.m < 2 || config.n_min < 1 || config.max_depth < 1 || config.max_leaves < 1) {
        throw std::invalid_argument("estimate: invalid engine configuration");
    }

    const UpperClosedFlags closed = upper_closed_flags(domain, domain);
    for (std::uint64_t i = 0; i < total_n; ++i) {
        if (!box_contains(domain, samples.row(i), closed)) {
            throw std::invalid_argument("estimate: sample row " + std::to_string(i) +
                                        " outside the domain");
        }
    }

    std::vector<DensityLeaf> leaves;
    bool truncated = false;

    std::deque<WorkItem> pending;
    pending.push_back({domain, full_view(samples), 0});

    const double nvol = static_cast<double>(total_n);
    auto finalize = [&](WorkItem&& item) {
        const double volume = item.box.volume();
        DensityLeaf leaf{std::move(item.box), 0.0, item.subset.size()};
        leaf.c = static_cast<double>(leaf.count) / (nvol * volume);
        leaves.push_back(std::move(leaf));
    };

    while (!pending.empty()) {
        WorkItem item = [&]() {
            if (config.order == WorkOrder::lifo) {
                WorkItem it = std::move(pending.back());
                pending.pop_back();
                return it;
            }
            // fifo; restart_scan repositions children below instead.
            WorkItem it = std::move(pending.front());
            pending.pop_front();
            return it;
        }();

        const std::size_t n = item.subset.size();
        const bool budget_hit = leaves.size() + pending.size() + 1 >= config.max_leaves;

        bool terminal = n == 0 || n <= config.n_min || item.depth >= config.max_depth;
        if (!terminal && budget_hit) {
            terminal = true;
            truncated = true;
        }
        if (!terminal) {
            terminal = is_uniform(item.subset, item.box, criterion, total_n, config);
        }
        if (!terminal) {
            const SplitChoice choice = choose_split(item.box, item.subset, config.m);
            if (!(item.box.lo(choice.axis) < choice.value &&
                  choice.value < item.box.hi(choice.axis))) {
                // The box is too thin for the cut to be representable;
                // nothing further to subdivide.
                terminal = true;
            } else {
                auto [lower, upper] = split_box(item.box, choice.axis, choice.value);
                SubsetView lower_view{item.subset.parent, {}};
                SubsetView upper_view{item.subset.parent, {}};
                for (std::uint32_t id : item.subset.idx) {
                    const double y = samples.at(id, choice.axis);
                    (y < choice.value ? lower_view : upper_view).idx.push_back(id);
                }
                WorkItem first{std::move(lower), std::move(lower_view), item.depth + 1};
                WorkItem second{std::move(upper), std::move(upper_view), item.depth + 1};
                if (config.order == WorkOrder::restart_scan) {
                    // The published control flow replaces the failed leaf in
                    // place and appends the second child at the end.
                    pending.push_front(std::move(first));
                    pending.push_back(std::move(second));
                } else {
                    pending.push_back(std::move(first));
                    pending.push_back(std::move(second));
                }
                continue;
            }
        }
        finalize(std::move(item));
    }

    return PiecewiseConstantDensity(domain, total_n, std::move(leaves), truncated);
}

}  // namespace seqpart
