#ifndef OCEA_ENGINE_HPP_
#define OCEA_ENGINE_HPP_

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ocea/clustering.hpp"
#include "ocea/metrics.hpp"
#include "ocea/problems.hpp"
#include "ocea/variation.hpp"

namespace ocea {

enum class Algorithm { kOcea, kNsga2Baseline };

std::string to_string(Algorithm algorithm);
/// Accepts "ocea" and "nsga2" (case-insensitive).
std::optional<Algorithm> parse_algorithm(std::string_view name);

struct TraceOptions {
  bool metrics = true;
  /// Metric cadence in generations; the final generation is always recorded.
  std::size_t every = 1;
  bool cluster_snapshots = false;
  /// Verify archive/cluster invariants after every generation. Always on in
  /// debug builds.
  bool check_invariants = false;
};

struct RunConfig {
  std::string problem;
  Algorithm algorithm = Algorithm::kOcea;
  std::size_t N = 100;
  std::size_t T = 300;
  std::size_t K_max = 7;
  Real beta = 0.6;
  VariationParams variation;
  std::uint64_t seed = 1;
  /// Offset added to the front's componentwise maximum to form the in-loop
  /// hypervolume reference point.
  Real selection_reference_offset = 1.0;
  TraceOptions trace;

  /// Defaults for `problem`: N = 100 (two objectives) or 105 (three), T = 300,
  /// K_max = 7, beta = 0.6, F = 0.6, CR = 1, p_m = 1/n, eta_m = 20.
  static RunConfig defaults_for(const ProblemDefinition& problem);

  /// Throws ContractViolation unless N >= 2, T >= 1, 1 <= K_max <= N,
  /// beta in [0,1] and the variation parameters are valid.
  void validate() const;
};

/// Archive A (which is also the population P between generations) and its
/// clustering. `position` maps solution ids to archive slots.
struct EngineState {
  std::vector<Solution> archive;
  ClusterSet clusters{1};
  std::size_t generation = 0;
  SolutionId next_id = 0;
  std::unordered_map<SolutionId, std::size_t> position;

  [[nodiscard]] ObjectiveSet objectives() const;
  [[nodiscard]] const Solution* find(SolutionId id) const;
  /// Refreshes every archive member's cluster_id from the cluster set.
  void assign_cluster_ids();
};

/// N solutions uniform in the box, each its own cluster.
EngineState initialize(const RunConfig& config, const ProblemDefinition& problem,
                       RandomSource& rng);

/// Mating-pool construction for one generation: the global pool M holds one
/// uniformly drawn member per cluster (cluster order). Each individual then
/// draws once: below beta its own cluster is the pool, otherwise M.
///
/// Pools with fewer than two members fall back to M, and an M with fewer than
/// two members falls back to the whole archive. Individuals no longer in the
/// archive use M.
class MatingPools {
 public:
  MatingPools(std::vector<Solution> global, Real beta) : global_(std::move(global)), beta_(beta) {}

  [[nodiscard]] const std::vector<Solution>& global() const { return global_; }

  std::vector<const Solution*> pool_for(const Solution& x, const EngineState& state,
                                        RandomSource& rng) const;

 private:
  std::vector<Solution> global_;
  Real beta_;
};

MatingPools build_mating_pools(const EngineState& state, Real beta, RandomSource& rng);

struct EsocOutcome {
  std::size_t levels = 0;            // L
  bool offspring_rejected = false;   // x* = y
  std::optional<SolutionId> removed;  // id of x* when it was an archive member
};

/// Steady-state environmental selection fused with cluster maintenance. `y`
/// must carry a fresh id. The worst member of A + {y} is the most-dominated
/// point of the last front when L > 1, else the smallest hypervolume
/// contributor (reference: front maximum + offset); ties go to the lowest
/// index, with y after the archive. If y survives it takes x*'s archive slot
/// and enters the clustering as a new cluster.
EsocOutcome esoc(EngineState& state, const Solution& y, Real reference_offset = 1.0);

/// Throws std::logic_error describing the first broken invariant: archive ids
/// unique and indexed, clusters partition the archive, counters equal member
/// counts and sum to |A|, centroids equal member means within `tolerance`.
void verify_invariants(const EngineState& state, Real tolerance = 1e-9);

struct RunTrace {
  RunConfig config;
  std::vector<MetricReport> metrics;
  std::vector<Solution> final_archive;
  std::optional<ClusterSet> final_clusters;
  std::size_t evaluations = 0;
  /// Line-delimited cluster records, one block per generation, when enabled.
  std::string cluster_snapshots;

  [[nodiscard]] ObjectiveSet final_objectives() const;
};

struct RunHooks {
  /// Called after initialization (generation 0) and after every generation.
  std::function<void(const EngineState&)> on_generation;
};

/// The clustering-guided steady-state algorithm.
RunTrace run(const RunConfig& config, const ProblemDefinition& problem,
             const ReferenceFront* reference = nullptr, const RunHooks& hooks = {});

/// Generational NSGA-II with the same variation operator: N offspring per
/// generation from random parent pairs of P, survivors chosen from P + Q by
/// front rank, then crowding distance (ties to the lower index).
RunTrace run_nsga2_baseline(const RunConfig& config, const ProblemDefinition& problem,
                            const ReferenceFront* reference = nullptr);

/// Dispatches on config.algorithm.
RunTrace execute(const RunConfig& config, const ProblemDefinition& problem,
                 const ReferenceFront* reference = nullptr);

/// Survivor selection used by the baseline: indices of the `count` columns of
/// `pool` kept by rank then crowding distance, in ascending order.
std::vector<std::size_t> nsga2_select(const ObjectiveSet& pool, std::size_t count);

}  // namespace ocea

#endif  // OCEA_ENGINE_HPP_
