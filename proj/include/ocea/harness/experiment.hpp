#ifndef OCEA_HARNESS_EXPERIMENT_HPP_
#define OCEA_HARNESS_EXPERIMENT_HPP_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ocea/engine.hpp"
#include "ocea/harness/spec.hpp"

namespace ocea::harness {

/// One seeded run. `label` names the configuration: the algorithm name, or
/// "<algorithm>[<param>=<value>]" for sweep points.
struct Task {
  std::string label;
  std::string problem;
  std::size_t run = 0;
  RunConfig config;
};

struct TaskResult {
  Task task;
  std::optional<RunTrace> trace;
  std::string error;  // non-empty when the run failed

  [[nodiscard]] bool ok() const { return trace.has_value(); }
};

struct ExperimentResults {
  ExperimentSpec spec;
  /// Configuration labels in table order.
  std::vector<std::string> labels;
  std::string reference_label;
  std::map<std::string, ReferenceFront> reference_fronts;
  std::vector<TaskResult> results;
};

enum class Mode { kRun, kSweep };

/// Expands the spec into tasks. Sweep mode runs every value of every axis for
/// the sweep algorithm with all other parameters at their configured values.
std::vector<Task> plan_tasks(const ExperimentSpec& spec, Mode mode);

/// Reference front for IGD: the configured file, else the analytic sampler.
/// Problems with neither get no front (IGD is omitted).
std::optional<ReferenceFront> load_reference_front(const ExperimentSpec& spec,
                                                   const ProblemDefinition& problem);

using ProgressCallback = std::function<void(const TaskResult&, std::size_t done, std::size_t total)>;

/// Runs every task on `spec.workers` threads. A failing task is recorded and
/// the others still run. Results come back in plan order regardless of the
/// schedule.
ExperimentResults run_experiment(const ExperimentSpec& spec, Mode mode,
                                 const ProgressCallback& progress = {});

}  // namespace ocea::harness

#endif  // OCEA_HARNESS_EXPERIMENT_HPP_
