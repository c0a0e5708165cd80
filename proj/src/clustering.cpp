#include "ocea/clustering.hpp"

#include <algorithm>
#include <limits>

#include <nlohmann/json.hpp>

namespace ocea {

ClusterSet::ClusterSet(std::size_t k_max) : k_max_(k_max) {
  if (k_max == 0) throw ContractViolation("ClusterSet: k_max must be >= 1");
}

ClusterSet ClusterSet::init_singletons(std::span<const Solution> population,
                                       std::size_t k_max) {
  if (population.empty()) {
    throw ContractViolation("init_singletons: population is empty");
  }
  ClusterSet set(k_max);
  set.clusters_.reserve(population.size());
  for (const auto& s : population) {
    set.clusters_.push_back({set.next_label_++, s.x, 1, {s.id}});
  }
  return set;
}

std::optional<std::size_t> ClusterSet::cluster_of(SolutionId id) const {
  for (std::size_t k = 0; k < clusters_.size(); ++k) {
    const auto& members = clusters_[k].members;
    if (std::find(members.begin(), members.end(), id) != members.end()) return k;
  }
  return std::nullopt;
}

std::size_t ClusterSet::total_count() const {
  std::size_t total = 0;
  for (const auto& c : clusters_) total += c.counter;
  return total;
}

void ClusterSet::remove_member(const Solution& solution) {
  const auto k = cluster_of(solution.id);
  if (!k) {
    throw ContractViolation("remove_member: solution " + std::to_string(solution.id) +
                            " is not in any cluster");
  }
  Cluster& cluster = clusters_[*k];
  std::erase(cluster.members, solution.id);
  if (cluster.members.empty()) {
    clusters_.erase(clusters_.begin() + static_cast<std::ptrdiff_t>(*k));
    return;
  }
  cluster.counter -= 1;
  cluster.centroid -= (solution.x - cluster.centroid) / static_cast<Real>(cluster.counter);
}

void ClusterSet::insert_as_new_cluster(const Solution& y) {
  if (cluster_of(y.id)) {
    throw ContractViolation("insert_as_new_cluster: solution " + std::to_string(y.id) +
                            " is already clustered");
  }
  clusters_.push_back({next_label_++, y.x, 1, {y.id}});
  if (clusters_.size() > k_max_) {
    const auto [a, b] = closest_pair();
    merge(a, b);
  }
}

std::pair<std::size_t, std::size_t> ClusterSet::closest_pair() const {
  if (clusters_.size() < 2) throw ContractViolation("closest_pair: fewer than two clusters");
  std::pair<std::size_t, std::size_t> best{0, 1};
  Real best_dist = std::numeric_limits<Real>::infinity();
  for (std::size_t a = 0; a < clusters_.size(); ++a) {
    for (std::size_t b = a + 1; b < clusters_.size(); ++b) {
      const Real d = (clusters_[a].centroid - clusters_[b].centroid).squaredNorm();
      if (d < best_dist) {
        best_dist = d;
        best = {a, b};
      }
    }
  }
  return best;
}

void ClusterSet::merge(std::size_t a, std::size_t b) {
  if (a == b || a >= clusters_.size() || b >= clusters_.size()) {
    throw ContractViolation("merge: invalid cluster pair");
  }
  Cluster& into = clusters_[a];
  Cluster& from = clusters_[b];
  const auto ca = static_cast<Real>(into.counter);
  const auto cb = static_cast<Real>(from.counter);
  into.centroid = (into.centroid * ca + from.centroid * cb) / (ca + cb);
  into.counter += from.counter;
  into.members.insert(into.members.end(), from.members.begin(), from.members.end());
  clusters_.erase(clusters_.begin() + static_cast<std::ptrdiff_t>(b));
}

std::vector<AddcCluster> addc_reference(std::span<const DecisionVector> stream,
                                        std::size_t k_max, double epsilon) {
  if (stream.empty()) throw ContractViolation("addc_reference: empty stream");
  if (k_max == 0) throw ContractViolation("addc_reference: k_max must be >= 1");

  std::vector<AddcCluster> clusters;
  for (const auto& y : stream) {
    if (!clusters.empty()) {
      std::size_t winner = 0;
      Real best = std::numeric_limits<Real>::infinity();
      for (std::size_t k = 0; k < clusters.size(); ++k) {
        const Real d = (y - clusters[k].centroid).squaredNorm();
        if (d < best) {
          best = d;
          winner = k;
        }
      }
      auto& w = clusters[winner];
      w.counter += 1;
      w.centroid += (y - w.centroid) / static_cast<Real>(w.counter);
    }

    if (clusters.size() < k_max) {
      clusters.push_back({y, 0});
      continue;
    }
    if (clusters.size() < 2) {
      // k_max = 1: the only cluster is both halves of the "closest pair"; the
      // spawned point would replace it, so it stays absorbed instead.
      continue;
    }
    std::size_t ga = 0;
    std::size_t gb = 1;
    Real best = std::numeric_limits<Real>::infinity();
    for (std::size_t a = 0; a < clusters.size(); ++a) {
      for (std::size_t b = a + 1; b < clusters.size(); ++b) {
        const Real d = (clusters[a].centroid - clusters[b].centroid).squaredNorm();
        if (d < best) {
          best = d;
          ga = a;
          gb = b;
        }
      }
    }
    auto& g = clusters[ga];
    const auto& d = clusters[gb];
    const auto total = g.counter + d.counter;
    if (total > 0) {
      g.centroid = (g.centroid * static_cast<Real>(g.counter) +
                    d.centroid * static_cast<Real>(d.counter)) /
                   static_cast<Real>(total);
    }
    g.counter = total;
    clusters[gb] = {y, 0};
  }

  std::erase_if(clusters, [epsilon](const AddcCluster& c) {
    return static_cast<double>(c.counter) < epsilon;
  });
  return clusters;
}

Real mean_silhouette(const Eigen::Ref<const Eigen::MatrixXd>& points,
                     std::span<const std::size_t> labels) {
  const auto count = static_cast<std::size_t>(points.cols());
  if (labels.size() != count) throw ContractViolation("mean_silhouette: label count mismatch");
  std::vector<std::size_t> distinct(labels.begin(), labels.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 2) throw ContractViolation("mean_silhouette: need two clusters");

  auto slot = [&](std::size_t label) {
    return static_cast<std::size_t>(
        std::lower_bound(distinct.begin(), distinct.end(), label) - distinct.begin());
  };
  std::vector<std::size_t> sizes(distinct.size(), 0);
  for (auto l : labels) ++sizes[slot(l)];

  Real total = 0.0;
  std::vector<Real> sums(distinct.size());
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t own = slot(labels[i]);
    if (sizes[own] < 2) continue;
    std::fill(sums.begin(), sums.end(), 0.0);
    for (std::size_t j = 0; j < count; ++j) {
      if (j == i) continue;
      sums[slot(labels[j])] += (points.col(static_cast<Eigen::Index>(i)) -
                                points.col(static_cast<Eigen::Index>(j)))
                                   .norm();
    }
    const Real a = sums[own] / static_cast<Real>(sizes[own] - 1);
    Real b = std::numeric_limits<Real>::infinity();
    for (std::size_t k = 0; k < distinct.size(); ++k) {
      if (k != own) b = std::min(b, sums[k] / static_cast<Real>(sizes[k]));
    }
    const Real denom = std::max(a, b);
    total += denom > 0 ? (b - a) / denom : 0.0;
  }
  return total / static_cast<Real>(count);
}

void write_cluster_snapshot(std::ostream& out, const ClusterSet& clusters,
                            std::size_t generation) {
  for (const auto& c : clusters.clusters()) {
    nlohmann::json record;
    record["generation"] = generation;
    record["cluster"] = c.label;
    record["counter"] = c.counter;
    record["centroid"] = std::vector<Real>(c.centroid.begin(), c.centroid.end());
    record["members"] = c.members;
    out << record.dump() << '\n';
  }
}

}  // namespace ocea
