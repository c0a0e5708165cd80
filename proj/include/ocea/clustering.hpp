#ifndef OCEA_CLUSTERING_HPP_
#define OCEA_CLUSTERING_HPP_

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "ocea/core.hpp"

namespace ocea {

struct Cluster {
  /// Stable label; survives the deletion of other clusters. A merge keeps the
  /// label of the surviving (lower-index) cluster.
  std::size_t label = 0;
  DecisionVector centroid;
  std::size_t counter = 0;
  std::vector<SolutionId> members;
};

/// Online clustering state embedded in the steady-state update: clusters are
/// spawned one solution at a time, shrunk when a member leaves the archive, and
/// merged pairwise whenever the count exceeds `k_max`.
///
/// Every centroid is the exact mean of its members' decision vectors up to
/// rounding, and the member sets partition the archive.
class ClusterSet {
 public:
  explicit ClusterSet(std::size_t k_max);

  /// One singleton cluster per solution, in population order. May exceed
  /// k_max; inserts reduce the count afterwards.
  static ClusterSet init_singletons(std::span<const Solution> population,
                                    std::size_t k_max);

  /// Removes `solution` from its cluster. An emptied cluster is deleted;
  /// otherwise the counter is decremented and the centroid updated with
  /// z <- z - (x - z) / c using the decremented counter.
  void remove_member(const Solution& solution);

  /// Appends `y` as a singleton cluster, then merges the closest centroid pair
  /// if the count exceeds k_max.
  void insert_as_new_cluster(const Solution& y);

  /// Argmin of Euclidean centroid distance over pairs (a < b); the first pair
  /// in lexicographic order wins ties.
  [[nodiscard]] std::pair<std::size_t, std::size_t> closest_pair() const;

  /// Merges cluster `b` into cluster `a` (weighted centroid, summed counters,
  /// united members) and erases `b`.
  void merge(std::size_t a, std::size_t b);

  [[nodiscard]] std::optional<std::size_t> cluster_of(SolutionId id) const;
  [[nodiscard]] const std::vector<Cluster>& clusters() const { return clusters_; }
  [[nodiscard]] const Cluster& operator[](std::size_t i) const { return clusters_[i]; }
  [[nodiscard]] std::size_t size() const { return clusters_.size(); }
  [[nodiscard]] std::size_t k_max() const { return k_max_; }
  [[nodiscard]] std::size_t total_count() const;

 private:
  std::size_t k_max_;
  std::size_t next_label_ = 0;
  std::vector<Cluster> clusters_;
};

/// Result of the reference online agglomerative clustering. Counters count
/// assigned points; freshly spawned clusters start at zero.
struct AddcCluster {
  DecisionVector centroid;
  std::size_t counter = 0;
};

/// Online agglomerative clustering of a data stream, as originally
/// formulated: each point updates its winner, then spawns a zero-count
/// cluster at itself (merging the closest pair first once k_max clusters
/// exist). Clusters with counter < epsilon are dropped at the end.
///
/// A zero-count winner is updated by incrementing its counter before the
/// centroid step, so its first assigned point replaces the centroid exactly.
/// The very first point of the stream has no winner and only spawns.
std::vector<AddcCluster> addc_reference(std::span<const DecisionVector> stream,
                                        std::size_t k_max, double epsilon = 0.0);

/// Mean silhouette coefficient of `points` (one per column) under `labels`.
/// Points in singleton clusters score 0. Requires at least two distinct
/// labels.
Real mean_silhouette(const Eigen::Ref<const Eigen::MatrixXd>& points,
                     std::span<const std::size_t> labels);

/// Writes one JSON record per cluster:
/// {"generation":g,"cluster":label,"counter":c,"centroid":[...],"members":[...]}
void write_cluster_snapshot(std::ostream& out, const ClusterSet& clusters,
                            std::size_t generation);

}  // namespace ocea

#endif  // OCEA_CLUSTERING_HPP_
