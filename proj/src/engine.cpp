#include "ocea/engine.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ocea/selection.hpp"

namespace ocea {

std::string to_string(Algorithm algorithm) {
  return algorithm == Algorithm::kOcea ? "ocea" : "nsga2";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "ocea") return Algorithm::kOcea;
  if (lower == "nsga2" || lower == "nsga-ii" || lower == "nsga2_baseline") {
    return Algorithm::kNsga2Baseline;
  }
  return std::nullopt;
}

RunConfig RunConfig::defaults_for(const ProblemDefinition& problem) {
  RunConfig config;
  config.problem = problem.name;
  config.N = problem.m >= 3 ? 105 : 100;
  config.variation.p_m = 1.0 / static_cast<Real>(problem.n);
  return config;
}

void RunConfig::validate() const {
  if (N < 2) throw ContractViolation("N must be >= 2");
  if (T < 1) throw ContractViolation("T must be >= 1");
  if (K_max < 1 || K_max > N) throw ContractViolation("K_max must lie in [1, N]");
  if (!(beta >= 0.0 && beta <= 1.0)) throw ContractViolation("beta must lie in [0,1]");
  if (!(selection_reference_offset > 0.0)) {
    throw ContractViolation("selection reference offset must be positive");
  }
  if (trace.every == 0) throw ContractViolation("trace cadence must be >= 1");
  variation.validate();
}

ObjectiveSet EngineState::objectives() const {
  if (archive.empty()) return {};
  ObjectiveSet out(archive.front().f.size(), static_cast<Eigen::Index>(archive.size()));
  for (std::size_t i = 0; i < archive.size(); ++i) {
    out.col(static_cast<Eigen::Index>(i)) = archive[i].f;
  }
  return out;
}

const Solution* EngineState::find(SolutionId id) const {
  const auto it = position.find(id);
  return it == position.end() ? nullptr : &archive[it->second];
}

void EngineState::assign_cluster_ids() {
  for (auto& s : archive) s.cluster_id.reset();
  for (std::size_t k = 0; k < clusters.size(); ++k) {
    for (auto id : clusters[k].members) {
      if (auto it = position.find(id); it != position.end()) archive[it->second].cluster_id = k;
    }
  }
}

namespace {

std::vector<Solution> random_population(std::size_t count, const ProblemDefinition& problem,
                                        RandomSource& rng, SolutionId& next_id) {
  std::vector<Solution> population;
  population.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Solution s;
    s.id = next_id++;
    s.x.resize(problem.n);
    for (Eigen::Index d = 0; d < problem.n; ++d) {
      s.x[d] = rng.uniform(problem.bounds.lower[d], problem.bounds.upper[d]);
    }
    s.f = evaluate(problem, s.x);
    population.push_back(std::move(s));
  }
  return population;
}

ObjectiveSet stack_objectives(std::span<const Solution> solutions) {
  ObjectiveSet out(solutions.front().f.size(), static_cast<Eigen::Index>(solutions.size()));
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    out.col(static_cast<Eigen::Index>(i)) = solutions[i].f;
  }
  return out;
}

class MetricRecorder {
 public:
  MetricRecorder(const RunConfig& config, const ProblemDefinition& problem,
                 const ReferenceFront* reference)
      : config_(config), problem_(problem), reference_(reference),
        start_(std::chrono::steady_clock::now()) {}

  void record(std::size_t generation, std::span<const Solution> archive,
              std::vector<MetricReport>& out) const {
    if (!config_.trace.metrics) return;
    if (generation % config_.trace.every != 0 && generation != config_.T) return;
    MetricReport report;
    report.generation = generation;
    const ObjectiveSet objectives = stack_objectives(archive);
    if (reference_ != nullptr && reference_->points.cols() > 0) {
      report.igd = igd(objectives, reference_->points);
    }
    if (problem_.metric_reference) report.hv = hv_metric(objectives, problem_);
    report.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    out.push_back(report);
  }

 private:
  const RunConfig& config_;
  const ProblemDefinition& problem_;
  const ReferenceFront* reference_;
  std::chrono::steady_clock::time_point start_;
};

Solution generate(const Solution& x, std::span<const Solution* const> pool,
                  const RunConfig& config, RandomSource& rng,
                  const ProblemDefinition& problem) {
  try {
    return sol_gen(x, pool, config.variation, rng, problem);
  } catch (const EvaluationError& e) {
    throw EvaluationError(std::string(e.what()) + " [algorithm " + to_string(config.algorithm) +
                          ", seed " + std::to_string(config.seed) + "]");
  }
}

}  // namespace

EngineState initialize(const RunConfig& config, const ProblemDefinition& problem,
                       RandomSource& rng) {
  EngineState state;
  state.archive = random_population(config.N, problem, rng, state.next_id);
  state.clusters = ClusterSet::init_singletons(state.archive, config.K_max);
  for (std::size_t i = 0; i < state.archive.size(); ++i) {
    state.position.emplace(state.archive[i].id, i);
  }
  state.assign_cluster_ids();
  return state;
}

MatingPools build_mating_pools(const EngineState& state, Real beta, RandomSource& rng) {
  std::vector<Solution> global;
  global.reserve(state.clusters.size());
  for (const auto& cluster : state.clusters.clusters()) {
    const SolutionId pick = cluster.members[rng.index(cluster.members.size())];
    global.push_back(*state.find(pick));
  }
  return {std::move(global), beta};
}

std::vector<const Solution*> MatingPools::pool_for(const Solution& x, const EngineState& state,
                                                   RandomSource& rng) const {
  std::vector<const Solution*> pool;
  const bool own_cluster = rng.uniform() < beta_;
  if (own_cluster) {
    if (auto k = state.clusters.cluster_of(x.id)) {
      for (auto id : state.clusters[*k].members) pool.push_back(state.find(id));
    }
  }
  if (pool.size() < 2) {
    pool.clear();
    for (const auto& s : global_) pool.push_back(&s);
  }
  if (pool.size() < 2) {
    pool.clear();
    for (const auto& s : state.archive) pool.push_back(&s);
  }
  return pool;
}

EsocOutcome esoc(EngineState& state, const Solution& y, Real reference_offset) {
  const auto n = state.archive.size();
  if (state.position.contains(y.id)) {
    throw ContractViolation("esoc: offspring id " + std::to_string(y.id) + " already in archive");
  }
  ObjectiveSet points(y.f.size(), static_cast<Eigen::Index>(n + 1));
  for (std::size_t i = 0; i < n; ++i) points.col(static_cast<Eigen::Index>(i)) = state.archive[i].f;
  points.col(static_cast<Eigen::Index>(n)) = y.f;

  const FrontPartition partition = fast_nondominated_sort(points);
  EsocOutcome outcome;
  outcome.levels = partition.levels();

  std::size_t worst = 0;
  if (partition.levels() > 1) {
    const auto& last = partition.fronts.back();
    worst = last.front();
    for (auto idx : last) {
      if (partition.dominated_by[idx] > partition.dominated_by[worst]) worst = idx;
    }
  } else {
    const ObjectiveVector r = selection_reference(points, reference_offset);
    const std::vector<Real> contribution = hv_contributions(points, r);
    worst = static_cast<std::size_t>(
        std::min_element(contribution.begin(), contribution.end()) - contribution.begin());
  }

  if (worst == n) {
    outcome.offspring_rejected = true;
    return outcome;
  }

  Solution& slot = state.archive[worst];
  outcome.removed = slot.id;
  state.clusters.remove_member(slot);
  state.position.erase(slot.id);
  slot = y;
  state.position.emplace(y.id, worst);
  state.clusters.insert_as_new_cluster(y);
  return outcome;
}

void verify_invariants(const EngineState& state, Real tolerance) {
  const auto fail = [&](const std::string& what) {
    throw std::logic_error("generation " + std::to_string(state.generation) + ": " + what);
  };
  if (state.position.size() != state.archive.size()) fail("position index size mismatch");
  for (std::size_t i = 0; i < state.archive.size(); ++i) {
    const auto it = state.position.find(state.archive[i].id);
    if (it == state.position.end() || it->second != i) fail("position index stale");
  }
  std::unordered_map<SolutionId, std::size_t> seen;
  std::size_t counter_sum = 0;
  for (std::size_t k = 0; k < state.clusters.size(); ++k) {
    const Cluster& c = state.clusters[k];
    if (c.members.empty()) fail("empty cluster " + std::to_string(c.label));
    if (c.counter != c.members.size()) fail("counter != |members| in cluster " + std::to_string(c.label));
    counter_sum += c.counter;
    DecisionVector mean = DecisionVector::Zero(c.centroid.size());
    for (auto id : c.members) {
      if (!seen.emplace(id, k).second) fail("solution " + std::to_string(id) + " in two clusters");
      const Solution* s = state.find(id);
      if (s == nullptr) fail("cluster member " + std::to_string(id) + " not in archive");
      mean += s->x;
    }
    mean /= static_cast<Real>(c.members.size());
    const Real err = (mean - c.centroid).cwiseAbs().maxCoeff();
    if (err > tolerance) {
      std::ostringstream msg;
      msg << "centroid of cluster " << c.label << " off by " << err;
      fail(msg.str());
    }
  }
  if (counter_sum != state.archive.size()) fail("sum of counters != archive size");
  if (seen.size() != state.archive.size()) fail("clusters do not cover the archive");
}

ObjectiveSet RunTrace::final_objectives() const { return stack_objectives(final_archive); }

RunTrace run(const RunConfig& config, const ProblemDefinition& problem,
             const ReferenceFront* reference, const RunHooks& hooks) {
  config.validate();
  RandomSource rng(config.seed);
  RunTrace trace;
  trace.config = config;
  const MetricRecorder recorder(config, problem, reference);
#ifndef NDEBUG
  constexpr bool kAlwaysCheck = true;
#else
  constexpr bool kAlwaysCheck = false;
#endif
  const bool check = kAlwaysCheck || config.trace.check_invariants;

  EngineState state = initialize(config, problem, rng);
  trace.evaluations = config.N;
  std::ostringstream snapshots;
  auto after_generation = [&] {
    state.assign_cluster_ids();
    if (check) verify_invariants(state);
    if (config.trace.cluster_snapshots) {
      write_cluster_snapshot(snapshots, state.clusters, state.generation);
    }
    recorder.record(state.generation, state.archive, trace.metrics);
    if (hooks.on_generation) hooks.on_generation(state);
  };
  after_generation();

  std::vector<Solution> bases;
  for (std::size_t t = 1; t <= config.T; ++t) {
    const MatingPools pools = build_mating_pools(state, config.beta, rng);
    bases = state.archive;
    for (std::size_t i = 0; i < config.N; ++i) {
      const std::vector<const Solution*> pool = pools.pool_for(bases[i], state, rng);
      Solution y = generate(bases[i], pool, config, rng, problem);
      y.id = state.next_id++;
      ++trace.evaluations;
      esoc(state, y, config.selection_reference_offset);
    }
    state.generation = t;
    after_generation();
  }

  trace.final_archive = state.archive;
  trace.final_clusters = state.clusters;
  trace.cluster_snapshots = snapshots.str();
  return trace;
}

std::vector<std::size_t> nsga2_select(const ObjectiveSet& pool, std::size_t count) {
  const FrontPartition partition = fast_nondominated_sort(pool);
  std::vector<std::size_t> chosen;
  for (const auto& front : partition.fronts) {
    if (chosen.size() + front.size() <= count) {
      chosen.insert(chosen.end(), front.begin(), front.end());
      if (chosen.size() == count) break;
      continue;
    }
    ObjectiveSet members(pool.rows(), static_cast<Eigen::Index>(front.size()));
    for (std::size_t j = 0; j < front.size(); ++j) {
      members.col(static_cast<Eigen::Index>(j)) = pool.col(static_cast<Eigen::Index>(front[j]));
    }
    const std::vector<Real> crowding = crowding_distance(members);
    std::vector<std::size_t> order(front.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return crowding[a] > crowding[b]; });
    for (std::size_t j = 0; chosen.size() < count; ++j) chosen.push_back(front[order[j]]);
    break;
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

RunTrace run_nsga2_baseline(const RunConfig& config, const ProblemDefinition& problem,
                            const ReferenceFront* reference) {
  config.validate();
  RandomSource rng(config.seed);
  RunTrace trace;
  trace.config = config;
  const MetricRecorder recorder(config, problem, reference);

  SolutionId next_id = 0;
  std::vector<Solution> population = random_population(config.N, problem, rng, next_id);
  trace.evaluations = config.N;
  recorder.record(0, population, trace.metrics);

  for (std::size_t t = 1; t <= config.T; ++t) {
    std::vector<const Solution*> parents;
    for (const auto& s : population) parents.push_back(&s);
    std::vector<Solution> combined = population;
    for (std::size_t i = 0; i < config.N; ++i) {
      Solution y = generate(population[i], parents, config, rng, problem);
      y.id = next_id++;
      ++trace.evaluations;
      combined.push_back(std::move(y));
    }
    const std::vector<std::size_t> keep = nsga2_select(stack_objectives(combined), config.N);
    std::vector<Solution> next;
    next.reserve(config.N);
    for (auto idx : keep) next.push_back(std::move(combined[idx]));
    population = std::move(next);
    recorder.record(t, population, trace.metrics);
  }
  trace.final_archive = std::move(population);
  return trace;
}

RunTrace execute(const RunConfig& config, const ProblemDefinition& problem,
                 const ReferenceFront* reference) {
  return config.algorithm == Algorithm::kOcea ? run(config, problem, reference)
                                              : run_nsga2_baseline(config, problem, reference);
}

}  // namespace ocea
