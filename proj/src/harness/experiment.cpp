#include "ocea/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <thread>

namespace ocea::harness {

namespace {

std::string format_value(Real v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void set_parameter(RunConfig& config, const std::string& name, Real value) {
  ParameterOverrides o;
  auto count = [&]() -> std::size_t {
    if (value < 0.0 || value != std::floor(value)) {
      throw ConfigurationError(name + " must be a non-negative integer, got " + format_value(value));
    }
    return static_cast<std::size_t>(value);
  };
  if (name == "N") o.N = count();
  else if (name == "T") o.T = count();
  else if (name == "K_max") o.K_max = count();
  else if (name == "beta") o.beta = value;
  else if (name == "F") o.F = value;
  else if (name == "CR") o.CR = value;
  else if (name == "p_m") o.p_m = value;
  else if (name == "eta_m") o.eta_m = value;
  else if (name == "selection_offset") o.selection_offset = value;
  else throw ConfigurationError("unknown sweep parameter '" + name + "'");
  o.apply(config);
}

struct Variant {
  std::string label;
  std::string algorithm;
  std::optional<std::pair<std::string, Real>> setting;
};

std::vector<Variant> variants(const ExperimentSpec& spec, Mode mode) {
  std::vector<Variant> out;
  if (mode == Mode::kRun) {
    for (const auto& alg : spec.algorithms) out.push_back({alg, alg, std::nullopt});
    return out;
  }
  if (!spec.sweep) throw ConfigurationError("spec has no sweep section");
  for (const auto& [param, values] : spec.sweep->axes) {
    for (Real v : values) {
      out.push_back({spec.sweep->algorithm + "[" + param + "=" + format_value(v) + "]",
                     spec.sweep->algorithm, std::make_pair(param, v)});
    }
  }
  return out;
}

}  // namespace

std::vector<Task> plan_tasks(const ExperimentSpec& spec, Mode mode) {
  const std::size_t runs = mode == Mode::kSweep && spec.sweep && spec.sweep->runs
                               ? *spec.sweep->runs
                               : spec.runs;
  std::vector<Task> tasks;
  for (const auto& problem_name : spec.problems) {
    const ProblemDefinition problem = resolve_problem(spec, problem_name);
    for (const auto& variant : variants(spec, mode)) {
      RunConfig config = resolve_config(spec, variant.algorithm, problem);
      if (variant.setting) set_parameter(config, variant.setting->first, variant.setting->second);
      for (std::size_t r = 0; r < runs; ++r) {
        Task task{variant.label, problem_name, r, config};
        task.config.seed = derive_seed(spec.base_seed, variant.label, problem_name, r);
        tasks.push_back(std::move(task));
      }
    }
  }
  return tasks;
}

std::optional<ReferenceFront> load_reference_front(const ExperimentSpec& spec,
                                                   const ProblemDefinition& problem) {
  std::optional<std::size_t> resolution;
  if (auto it = spec.problem_settings.find(problem.name); it != spec.problem_settings.end()) {
    if (it->second.front_file) return read_front(*it->second.front_file);
    resolution = it->second.front_resolution;
  }
  if (!problem.has_analytic_front()) return std::nullopt;
  return sample_reference_front(problem, resolution.value_or(default_front_resolution(problem.m)));
}

ExperimentResults run_experiment(const ExperimentSpec& spec, Mode mode,
                                 const ProgressCallback& progress) {
  ExperimentResults results;
  results.spec = spec;
  for (const auto& v : variants(spec, mode)) results.labels.push_back(v.label);
  results.reference_label = mode == Mode::kRun && !spec.reference_algorithm.empty()
                                ? spec.reference_algorithm
                                : results.labels.front();

  std::map<std::string, ProblemDefinition> problems;
  for (const auto& name : spec.problems) {
    problems.emplace(name, resolve_problem(spec, name));
    if (auto front = load_reference_front(spec, problems.at(name))) {
      results.reference_fronts.emplace(name, std::move(*front));
    }
  }

  const std::vector<Task> tasks = plan_tasks(spec, mode);
  results.results.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  std::size_t done = 0;
  std::mutex progress_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      TaskResult& slot = results.results[i];
      slot.task = tasks[i];
      try {
        const auto& problem = problems.at(slot.task.problem);
        auto front = results.reference_fronts.find(slot.task.problem);
        const ReferenceFront* reference =
            front == results.reference_fronts.end() ? nullptr : &front->second;
        slot.trace = execute(slot.task.config, problem, reference);
      } catch (const std::exception& e) {
        slot.error = e.what();
      }
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(slot, ++done, tasks.size());
      }
    }
  };

  const std::size_t threads = std::max<std::size_t>(1, std::min(spec.workers, tasks.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return results;
}

}  // namespace ocea::harness
