#ifndef OCEA_SRC_PROBLEMS_DETAIL_HPP_
#define OCEA_SRC_PROBLEMS_DETAIL_HPP_

#include <functional>

#include "ocea/problems.hpp"

namespace ocea::detail {

/// Columns of `points` that no other column dominates; duplicates keep their
/// first occurrence only.
ObjectiveSet nondominated_columns(const ObjectiveSet& points);

/// Front sampler that walks an evenly spaced grid over the Pareto-set
/// parameterization ([0,1] for m=2, a floor(sqrt(R))^2 grid over [0,1]^2 for
/// m=3) and discards dominated images. Disconnected fronts therefore yield
/// fewer than R points.
std::function<ReferenceFront(std::size_t)> front_from_pareto_set(
    std::function<DecisionVector(const DecisionVector&)> ps_point,
    std::function<ObjectiveVector(const DecisionVector&)> objectives,
    Eigen::Index m);

}  // namespace ocea::detail

#endif  // OCEA_SRC_PROBLEMS_DETAIL_HPP_
