// Command-line front end: run, sweep, stats, validate.
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ocea/harness/experiment.hpp"
#include "ocea/harness/output.hpp"
#include "ocea/harness/spec.hpp"

namespace h = ocea::harness;

namespace {

struct Overrides {
  std::string output;
  std::size_t workers = 0;
  std::size_t trace_every = 0;
  std::optional<std::uint64_t> seed;
};

void print_diagnostics(const h::ParsedSpec& parsed, const std::string& path) {
  for (const auto& d : parsed.diagnostics) {
    std::cerr << path << ": " << d.where << ": " << d.message << "\n";
  }
}

int execute(const std::string& path, h::Mode mode, const Overrides& o) {
  h::ParsedSpec parsed = h::load_spec(path);
  if (!parsed.ok()) {
    print_diagnostics(parsed, path);
    return 2;
  }
  h::ExperimentSpec spec = parsed.spec;
  if (mode == h::Mode::kSweep && !spec.sweep) {
    std::cerr << path << ": sweep: section missing\n";
    return 2;
  }
  if (!o.output.empty()) spec.output = o.output;
  if (o.workers > 0) spec.workers = o.workers;
  if (o.trace_every > 0) spec.trace_every = o.trace_every;
  if (o.seed) spec.base_seed = *o.seed;

  try {
    h::prepare_output_directory(spec.output);
  } catch (const h::OutputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  std::size_t failed = 0;
  auto progress = [&](const h::TaskResult& r, std::size_t done, std::size_t total) {
    if (!r.ok()) {
      ++failed;
      std::cerr << "run failed: " << r.task.label << " " << r.task.problem << " #" << r.task.run
                << ": " << r.error << "\n";
    }
    std::cerr << "\r[" << done << "/" << total << "]" << std::flush;
  };
  const h::ExperimentResults results = h::run_experiment(spec, mode, progress);
  std::cerr << "\n";
  h::write_outputs(results, spec.output);
  const auto table = h::summarize(results.labels, spec.problems, results.reference_label,
                                  h::run_records(results));
  std::cout << h::format_table(table);
  std::cerr << "results written to " << spec.output.string() << "\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OCEA experiment harness"};
  app.require_subcommand(1);
  Overrides o;
  std::string seed_text;

  auto add_run_flags = [&](CLI::App* cmd) {
    cmd->add_option("-o,--output", o.output, "Output directory (overrides the spec)");
    cmd->add_option("-w,--workers", o.workers, "Concurrent runs")->check(CLI::PositiveNumber);
    cmd->add_option("--trace-every", o.trace_every, "Metric cadence in generations")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed_text, "Base seed override");
  };

  std::string spec_path;
  auto* run_cmd = app.add_subcommand("run", "Run every algorithm on every problem");
  run_cmd->add_option("spec", spec_path, "Experiment spec (YAML)")->required();
  add_run_flags(run_cmd);

  auto* sweep_cmd = app.add_subcommand("sweep", "Run the spec's parameter sweep");
  sweep_cmd->add_option("spec", spec_path, "Experiment spec (YAML)")->required();
  add_run_flags(sweep_cmd);

  std::string results_dir;
  auto* stats_cmd = app.add_subcommand("stats", "Recompute statistics from persisted traces");
  stats_cmd->add_option("results", results_dir, "Results directory")->required();

  auto* validate_cmd = app.add_subcommand("validate", "Check a spec and report diagnostics");
  validate_cmd->add_option("spec", spec_path, "Experiment spec (YAML)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (!seed_text.empty()) o.seed = std::stoull(seed_text);
    if (*run_cmd) return execute(spec_path, h::Mode::kRun, o);
    if (*sweep_cmd) return execute(spec_path, h::Mode::kSweep, o);
    if (*validate_cmd) {
      const auto parsed = h::load_spec(spec_path);
      print_diagnostics(parsed, spec_path);
      if (parsed.ok()) std::cout << spec_path << ": ok\n";
      return parsed.ok() ? 0 : 2;
    }
    if (*stats_cmd) {
      const auto check = h::recompute_stats(results_dir);
      std::cout << check.table_text;
      for (const auto& issue : check.issues) std::cerr << "mismatch: " << issue << "\n";
      return check.issues.empty() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
