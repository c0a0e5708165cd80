#ifndef OCEA_HARNESS_SPEC_HPP_
#define OCEA_HARNESS_SPEC_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ocea/engine.hpp"

namespace ocea::harness {

inline constexpr std::string_view kSpecVersion = "ocea-experiment/1";

/// Parameter values that may be set per algorithm (or for all algorithms under
/// the key "all"). Unset fields keep the problem defaults.
struct ParameterOverrides {
  std::optional<std::size_t> N;  // absent or "auto": 100 for m=2, 105 for m=3
  std::optional<std::size_t> T;
  std::optional<std::size_t> K_max;
  std::optional<Real> beta;
  std::optional<Real> F;
  std::optional<Real> CR;
  std::optional<Real> p_m;  // absent or "1/n": reciprocal of the dimension
  std::optional<Real> eta_m;
  std::optional<Real> selection_offset;

  void apply(RunConfig& config) const;
};

struct ProblemSettings {
  std::optional<Eigen::Index> n;
  std::optional<std::filesystem::path> front_file;
  std::optional<std::size_t> front_resolution;
};

/// One-factor-at-a-time sweep: every value of every axis is run with the
/// other parameters at their configured values.
struct SweepSpec {
  std::string algorithm = "ocea";
  std::optional<std::size_t> runs;
  std::vector<std::pair<std::string, std::vector<Real>>> axes;
};

struct ExperimentSpec {
  std::string name = "experiment";
  std::vector<std::string> algorithms;
  std::vector<std::string> problems;
  std::size_t runs = 33;
  std::uint64_t base_seed = 0;
  std::size_t workers = 1;
  std::size_t trace_every = 1;
  bool cluster_snapshots = false;
  std::filesystem::path output = "results";
  std::string reference_algorithm;  // defaults to the first algorithm
  std::map<std::string, ParameterOverrides> parameters;
  std::map<std::string, ProblemSettings> problem_settings;
  std::optional<SweepSpec> sweep;
  /// FNV-1a 64 of the spec text, hex encoded.
  std::string source_hash;
};

struct Diagnostic {
  std::string where;
  std::string message;
};

struct ParsedSpec {
  ExperimentSpec spec;
  std::vector<Diagnostic> diagnostics;

  [[nodiscard]] bool ok() const { return diagnostics.empty(); }
};

/// Parses a YAML experiment spec. Relative paths resolve against `base_dir`.
/// Problems of parse, schema and value range are reported as diagnostics,
/// never thrown.
ParsedSpec parse_spec(std::string_view yaml_text,
                      const std::filesystem::path& base_dir = {});
ParsedSpec load_spec(const std::filesystem::path& path);

/// Problem defaults, then the "all" overrides, then the algorithm's own.
RunConfig resolve_config(const ExperimentSpec& spec, std::string_view algorithm,
                         const ProblemDefinition& problem);

ProblemDefinition resolve_problem(const ExperimentSpec& spec, std::string_view name);

std::string fnv1a_hex(std::string_view text);
std::uint64_t fnv1a(std::string_view text);

/// seed = base_seed XOR fnv1a("<label>|<problem>|<run>").
std::uint64_t derive_seed(std::uint64_t base_seed, std::string_view label,
                          std::string_view problem, std::size_t run);

}  // namespace ocea::harness

#endif  // OCEA_HARNESS_SPEC_HPP_
