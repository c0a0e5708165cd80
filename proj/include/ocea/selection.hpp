#ifndef OCEA_SELECTION_HPP_
#define OCEA_SELECTION_HPP_

#include <cstddef>
#include <vector>

#include "ocea/core.hpp"
#include "ocea/problems.hpp"

namespace ocea {

/// Fronts B^1..B^L of column indices, each front in ascending index order.
struct FrontPartition {
  std::vector<std::vector<std::size_t>> fronts;
  /// Number of points in the input set dominating each point.
  std::vector<std::size_t> dominated_by;

  [[nodiscard]] std::size_t levels() const { return fronts.size(); }
};

/// Deb's fast non-dominated sorting.
FrontPartition fast_nondominated_sort(const ObjectiveSet& points);

/// Number of columns of `set` that strictly dominate `x`.
std::size_t dominance_count(const ObjectiveVector& x, const ObjectiveSet& set);

/// Lebesgue measure of the union of boxes [p, r) for m in {2, 3}. Points that
/// do not strictly dominate `r` contribute nothing. Throws UnsupportedError for
/// other m.
Real hypervolume(const ObjectiveSet& points, const ObjectiveVector& r);

/// HV(points) - HV(points without column `index`).
Real hv_contribution(std::size_t index, const ObjectiveSet& points,
                     const ObjectiveVector& r);

/// Contributions of every column at once. Mutually non-dominated 2-D sets
/// take an O(k log k) path; everything else uses
/// vol([p, r)) - HV({max(p, q) : q != p}).
std::vector<Real> hv_contributions(const ObjectiveSet& points, const ObjectiveVector& r);

/// Number of columns that fail to strictly dominate `r` and are therefore
/// clipped out of any hypervolume against it.
std::size_t clipped_points(const ObjectiveSet& points, const ObjectiveVector& r);

/// Reference point for in-loop selection: componentwise maximum of `front`
/// plus `offset` per objective.
ObjectiveVector selection_reference(const ObjectiveSet& front, Real offset = 1.0);

struct MonteCarloEstimate {
  Real value = 0.0;
  Real std_error = 0.0;
};

/// Monte-Carlo hypervolume over the box spanned by the componentwise minimum
/// of the non-clipped points and `r`. Any m.
MonteCarloEstimate mc_hypervolume(const ObjectiveSet& points, const ObjectiveVector& r,
                                  std::size_t samples, RandomSource& rng);

/// NSGA-II crowding distance of each column within `front`; extreme points of
/// every objective get +infinity.
std::vector<Real> crowding_distance(const ObjectiveSet& front);

}  // namespace ocea

#endif  // OCEA_SELECTION_HPP_
