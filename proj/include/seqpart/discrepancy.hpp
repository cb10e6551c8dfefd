#pragma once

#include <cstdint>
#include <limits>

#include "seqpart/geometry.hpp"

namespace seqpart {

/// Mixture discrepancy D^mix of a point set in the unit cube, O(n^2 d).
/// Throws std::invalid_argument on an empty set.
double mixture_discrepancy(const UnitPointSet& pts);

/// The squared value before the clamp at zero; can dip a rounding error
/// below zero for near-perfect sets.
double mixture_discrepancy_squared(const UnitPointSet& pts);

/// Certified lower bound on D^mix in O(n d): projects the kernel mean
/// embedding gap onto a fixed family of probe functions K(., z). Never
/// exceeds the exact value, so a bound above the acceptance threshold
/// proves a leaf non-uniform without the O(n^2) sum.
double mixture_discrepancy_lower_bound(const UnitPointSet& pts);

struct StarDiscrepancyEstimate {
    double value = 0.0;
    bool is_exact = false;
    std::uint64_t iterations = 0;
};

/// Exact star discrepancy by enumerating the critical grid (point
/// coordinates plus 1 per axis), evaluating both the open-box and
/// closed-box limits at each node. Work is ~ n*(n+2)^d; throws
/// std::runtime_error when that exceeds work_budget.
StarDiscrepancyEstimate star_discrepancy_exact(const UnitPointSet& pts,
                                               double work_budget = 1.5e8);

/// Work estimate used by the budget check above.
double star_exact_work(const UnitPointSet& pts);

struct StarHeuristicConfig {
    int restarts = 100;
    int steps = 1000;            // threshold-accepting moves per restart
    double threshold_init = 1e-2;
    std::uint64_t seed = 0;
    // Abandon the search once the running maximum exceeds this value.
    // Used by the engine, where only "above the acceptance threshold"
    // matters; the returned value is still a valid lower bound.
    double stop_above = std::numeric_limits<double>::infinity();
};

StarDiscrepancyEstimate star_discrepancy_heuristic(const UnitPointSet& pts,
                                                   const StarHeuristicConfig& cfg);

/// Spec'd convenience form: `iterations` threshold-accepting steps per
/// restart with the default 100 restarts.
StarDiscrepancyEstimate star_discrepancy_heuristic(const UnitPointSet& pts,
                                                   int iterations,
                                                   std::uint64_t seed);

}  // namespace seqpart
