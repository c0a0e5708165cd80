#include "ocea/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace ocea {

FrontPartition fast_nondominated_sort(const ObjectiveSet& points) {
  const auto k = static_cast<std::size_t>(points.cols());
  FrontPartition out;
  out.dominated_by.assign(k, 0);
  std::vector<std::vector<std::size_t>> dominated(k);
  for (std::size_t p = 0; p < k; ++p) {
    for (std::size_t q = p + 1; q < k; ++q) {
      const auto cp = points.col(static_cast<Eigen::Index>(p));
      const auto cq = points.col(static_cast<Eigen::Index>(q));
      if (dominates(cp, cq)) {
        dominated[p].push_back(q);
        ++out.dominated_by[q];
      } else if (dominates(cq, cp)) {
        dominated[q].push_back(p);
        ++out.dominated_by[p];
      }
    }
  }

  std::vector<std::size_t> remaining = out.dominated_by;
  std::vector<std::size_t> current;
  for (std::size_t p = 0; p < k; ++p) {
    if (remaining[p] == 0) current.push_back(p);
  }
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (auto p : current) {
      for (auto q : dominated[p]) {
        if (--remaining[q] == 0) next.push_back(q);
      }
    }
    std::sort(next.begin(), next.end());
    out.fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return out;
}

std::size_t dominance_count(const ObjectiveVector& x, const ObjectiveSet& set) {
  std::size_t count = 0;
  for (Eigen::Index j = 0; j < set.cols(); ++j) {
    if (dominates(set.col(j), x)) ++count;
  }
  return count;
}

namespace {

void check_reference(const ObjectiveSet& points, const ObjectiveVector& r) {
  if (points.cols() > 0 && points.rows() != r.size()) {
    throw ContractViolation("hypervolume: reference point has " + std::to_string(r.size()) +
                            " objectives, points have " + std::to_string(points.rows()));
  }
  if (r.size() != 2 && r.size() != 3) {
    throw UnsupportedError("exact hypervolume supports 2 or 3 objectives, got " +
                           std::to_string(r.size()));
  }
}

bool inside(const ObjectiveSet& points, Eigen::Index j, const ObjectiveVector& r) {
  return (points.col(j).array() < r.array()).all();
}

/// 2-D dominated region as a staircase keyed by f1 with strictly decreasing
/// f2, tracking its area against (r1, r2).
class Staircase {
 public:
  Staircase(Real r1, Real r2) : r1_(r1), r2_(r2) {}

  void insert(Real f1, Real f2) {
    auto it = steps_.lower_bound(f1);
    if (it != steps_.begin() && std::prev(it)->second <= f2) return;
    if (it != steps_.end() && it->first == f1 && it->second <= f2) return;

    Real height = it == steps_.begin() ? r2_ : std::prev(it)->second;
    Real x = f1;
    while (it != steps_.end() && it->second >= f2) {
      area_ += (it->first - x) * (height - f2);
      height = it->second;
      x = it->first;
      it = steps_.erase(it);
    }
    const Real next_x = it == steps_.end() ? r1_ : it->first;
    area_ += (next_x - x) * (height - f2);
    steps_.emplace_hint(it, f1, f2);
  }

  [[nodiscard]] Real area() const { return area_; }

 private:
  Real r1_;
  Real r2_;
  Real area_ = 0.0;
  std::map<Real, Real> steps_;
};

Real hv2d(const std::vector<Eigen::Vector2d>& pts, const ObjectiveVector& r) {
  std::vector<Eigen::Vector2d> sorted = pts;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return a[0] != b[0] ? a[0] < b[0] : a[1] < b[1];
  });
  Real volume = 0.0;
  Real ceiling = r[1];
  for (const auto& p : sorted) {
    if (p[1] < ceiling) {
      volume += (r[0] - p[0]) * (ceiling - p[1]);
      ceiling = p[1];
    }
  }
  return volume;
}

Real hv3d(std::vector<Eigen::Vector3d> pts, const ObjectiveVector& r) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a[2] < b[2]; });
  Staircase stairs(r[0], r[1]);
  Real volume = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    stairs.insert(pts[i][0], pts[i][1]);
    const Real next = i + 1 < pts.size() ? pts[i + 1][2] : r[2];
    volume += stairs.area() * (next - pts[i][2]);
  }
  return volume;
}

Real hv_inside(const ObjectiveSet& points, const ObjectiveVector& r,
               std::ptrdiff_t skip = -1) {
  if (r.size() == 2) {
    std::vector<Eigen::Vector2d> pts;
    for (Eigen::Index j = 0; j < points.cols(); ++j) {
      if (j != skip && inside(points, j, r)) pts.emplace_back(points(0, j), points(1, j));
    }
    return hv2d(pts, r);
  }
  std::vector<Eigen::Vector3d> pts;
  for (Eigen::Index j = 0; j < points.cols(); ++j) {
    if (j != skip && inside(points, j, r)) {
      pts.emplace_back(points(0, j), points(1, j), points(2, j));
    }
  }
  return hv3d(std::move(pts), r);
}

Real box_volume(const ObjectiveSet& points, Eigen::Index j, const ObjectiveVector& r) {
  return (r - points.col(j)).prod();
}

/// vol([p_i, r)) minus the part of it that the other points also cover.
Real exclusive_volume(const ObjectiveSet& points, Eigen::Index i, const ObjectiveVector& r) {
  if (!inside(points, i, r)) return 0.0;
  ObjectiveSet lifted(points.rows(), points.cols() - 1);
  Eigen::Index c = 0;
  for (Eigen::Index j = 0; j < points.cols(); ++j) {
    if (j == i) continue;
    lifted.col(c++) = points.col(j).cwiseMax(points.col(i));
  }
  const Real shared = hv_inside(lifted, r);
  return std::max(0.0, box_volume(points, i, r) - shared);
}

/// Returns false when the inside points of a 2-D set are not mutually
/// non-dominated (up to exact duplicates); the caller then falls back.
bool contributions_2d(const ObjectiveSet& points, const ObjectiveVector& r,
                      std::vector<Real>& out) {
  std::vector<Eigen::Index> order;
  for (Eigen::Index j = 0; j < points.cols(); ++j) {
    if (inside(points, j, r)) order.push_back(j);
  }
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return points(0, a) != points(0, b) ? points(0, a) < points(0, b)
                                        : points(1, a) < points(1, b);
  });
  // group exact duplicates, then require strictly decreasing f2 across groups
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  for (std::size_t s = 0; s < order.size();) {
    std::size_t e = s + 1;
    while (e < order.size() && points.col(order[e]) == points.col(order[s])) ++e;
    if (!groups.empty()) {
      const auto prev = order[groups.back().first];
      if (!(points(1, order[s]) < points(1, prev) && points(0, order[s]) > points(0, prev))) {
        return false;
      }
    }
    groups.emplace_back(s, e);
    s = e;
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto [s, e] = groups[g];
    if (e - s > 1) continue;
    const auto j = order[s];
    const Real right = g + 1 < groups.size() ? points(0, order[groups[g + 1].first]) : r[0];
    const Real top = g > 0 ? points(1, order[groups[g - 1].first]) : r[1];
    out[static_cast<std::size_t>(j)] = (right - points(0, j)) * (top - points(1, j));
  }
  return true;
}

}  // namespace

Real hypervolume(const ObjectiveSet& points, const ObjectiveVector& r) {
  check_reference(points, r);
  return hv_inside(points, r);
}

Real hv_contribution(std::size_t index, const ObjectiveSet& points,
                     const ObjectiveVector& r) {
  check_reference(points, r);
  if (index >= static_cast<std::size_t>(points.cols())) {
    throw ContractViolation("hv_contribution: index out of range");
  }
  return exclusive_volume(points, static_cast<Eigen::Index>(index), r);
}

std::vector<Real> hv_contributions(const ObjectiveSet& points, const ObjectiveVector& r) {
  check_reference(points, r);
  std::vector<Real> out(static_cast<std::size_t>(points.cols()), 0.0);
  if (r.size() == 2 && contributions_2d(points, r, out)) return out;
  for (Eigen::Index j = 0; j < points.cols(); ++j) {
    out[static_cast<std::size_t>(j)] = exclusive_volume(points, j, r);
  }
  return out;
}

std::size_t clipped_points(const ObjectiveSet& points, const ObjectiveVector& r) {
  std::size_t count = 0;
  for (Eigen::Index j = 0; j < points.cols(); ++j) {
    if (!inside(points, j, r)) ++count;
  }
  return count;
}

ObjectiveVector selection_reference(const ObjectiveSet& front, Real offset) {
  if (front.cols() == 0) throw ContractViolation("selection_reference: empty front");
  return front.rowwise().maxCoeff().array() + offset;
}

MonteCarloEstimate mc_hypervolume(const ObjectiveSet& points, const ObjectiveVector& r,
                                  std::size_t samples, RandomSource& rng) {
  if (samples == 0) throw ContractViolation("mc_hypervolume: zero samples");
  std::vector<Eigen::Index> kept;
  for (Eigen::Index j = 0; j < points.cols(); ++j) {
    if (inside(points, j, r)) kept.push_back(j);
  }
  if (kept.empty()) return {};
  ObjectiveVector lo = points.col(kept.front());
  for (auto j : kept) lo = lo.cwiseMin(points.col(j));
  const ObjectiveVector span = r - lo;
  const Real box = span.prod();

  const Eigen::Index m = r.size();
  ObjectiveVector s(m);
  std::size_t hits = 0;
  for (std::size_t t = 0; t < samples; ++t) {
    for (Eigen::Index i = 0; i < m; ++i) s[i] = lo[i] + span[i] * rng.uniform();
    for (auto j : kept) {
      if ((points.col(j).array() <= s.array()).all()) {
        ++hits;
        break;
      }
    }
  }
  const Real frac = static_cast<Real>(hits) / static_cast<Real>(samples);
  return {box * frac, box * std::sqrt(frac * (1.0 - frac) / static_cast<Real>(samples))};
}

std::vector<Real> crowding_distance(const ObjectiveSet& front) {
  const auto k = static_cast<std::size_t>(front.cols());
  constexpr Real inf = std::numeric_limits<Real>::infinity();
  std::vector<Real> distance(k, 0.0);
  if (k <= 2) {
    std::fill(distance.begin(), distance.end(), inf);
    return distance;
  }
  std::vector<std::size_t> order(k);
  for (Eigen::Index obj = 0; obj < front.rows(); ++obj) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return front(obj, static_cast<Eigen::Index>(a)) < front(obj, static_cast<Eigen::Index>(b));
    });
    const Real lo = front(obj, static_cast<Eigen::Index>(order.front()));
    const Real hi = front(obj, static_cast<Eigen::Index>(order.back()));
    distance[order.front()] = inf;
    distance[order.back()] = inf;
    if (hi == lo) continue;
    for (std::size_t s = 1; s + 1 < k; ++s) {
      const Real gap = front(obj, static_cast<Eigen::Index>(order[s + 1])) -
                       front(obj, static_cast<Eigen::Index>(order[s - 1]));
      distance[order[s]] += gap / (hi - lo);
    }
  }
  return distance;
}

}  // namespace ocea
