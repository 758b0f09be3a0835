#pragma once

#include <functional>
#include <vector>

#include "hoadi/grid.hpp"

namespace hoadi {

struct SignedLevel {
    LevelIndex level;
    int sign;  // +1 or -1
};

// Signed level multiset of the combination at level n: plus-terms with
// |l|_1 = n+1, minus-terms with |l|_1 = n, both restricted to
// l_i >= exclusion_min (the distorted-grid exclusion). Terms are kept in
// ascending (l1, l2) order so reductions are deterministic.
struct CombinationPlan {
    int n = 0;
    int exclusion_min = 3;
    std::vector<SignedLevel> terms;

    int weight_sum() const;
    long total_nodes(const Domain& domain) const;
    int finest_level() const;  // max over terms of max(l1, l2)
};

// Throws with the minimal admissible n if either signed set is empty.
CombinationPlan make_plan(int n, int exclusion_min = 3);

// Tensor cubic Lagrange interpolation onto `target` (4-node windows per
// axis, one-sided at the edges; exact on coordinate-degree <= 3 tensors and
// an exact copy where nodes coincide).
GridField interpolate_to(const UniformGrid& source, const GridField& field,
                         const UniformGrid& target);

// Cubic interpolation of a field at one point.
double interpolate_at(const UniformGrid& source, const GridField& field, double x, double y);

// Runs the per-level solver over the plan (concurrently), interpolates each
// sub-solution to `target` and reduces with signs in plan order.
using LevelSolver = std::function<GridField(LevelIndex)>;
GridField combine(const CombinationPlan& plan, const LevelSolver& solve_level,
                  const UniformGrid& target, int threads = 0);

}  // namespace hoadi
