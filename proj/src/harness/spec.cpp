#include "ocea/harness/spec.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace ocea::harness {

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string fnv1a_hex(std::string_view text) {
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << fnv1a(text);
  return out.str();
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::string_view label,
                          std::string_view problem, std::size_t run) {
  const std::string key =
      std::string(label) + "|" + std::string(problem) + "|" + std::to_string(run);
  return base_seed ^ fnv1a(key);
}

void ParameterOverrides::apply(RunConfig& config) const {
  if (N) config.N = *N;
  if (T) config.T = *T;
  if (K_max) config.K_max = *K_max;
  if (beta) config.beta = *beta;
  if (F) config.variation.F = *F;
  if (CR) config.variation.CR = *CR;
  if (p_m) config.variation.p_m = *p_m;
  if (eta_m) config.variation.eta_m = *eta_m;
  if (selection_offset) config.selection_reference_offset = *selection_offset;
}

ProblemDefinition resolve_problem(const ExperimentSpec& spec, std::string_view name) {
  std::optional<Eigen::Index> n;
  if (auto it = spec.problem_settings.find(std::string(name)); it != spec.problem_settings.end()) {
    n = it->second.n;
  }
  return make_problem(name, n);
}

RunConfig resolve_config(const ExperimentSpec& spec, std::string_view algorithm,
                         const ProblemDefinition& problem) {
  RunConfig config = RunConfig::defaults_for(problem);
  const auto alg = parse_algorithm(algorithm);
  if (!alg) throw ConfigurationError("unknown algorithm '" + std::string(algorithm) + "'");
  config.algorithm = *alg;
  config.trace.every = spec.trace_every;
  config.trace.cluster_snapshots = spec.cluster_snapshots && *alg == Algorithm::kOcea;
  if (auto it = spec.parameters.find("all"); it != spec.parameters.end()) it->second.apply(config);
  if (auto it = spec.parameters.find(std::string(algorithm)); it != spec.parameters.end()) {
    it->second.apply(config);
  }
  return config;
}

namespace {

const std::set<std::string> kTopLevelKeys{
    "name",    "spec_version",        "algorithms", "problems",       "runs",
    "base_seed", "workers",           "trace_every", "cluster_snapshots", "output",
    "reference_algorithm", "parameters", "problem_settings", "sweep"};

const std::set<std::string> kParameterKeys{"N",   "T",   "K_max", "beta",  "F",
                                           "CR",  "p_m", "eta_m", "selection_offset"};

class Reader {
 public:
  explicit Reader(std::vector<Diagnostic>& diagnostics) : diagnostics_(diagnostics) {}

  void report(std::string where, std::string message) {
    diagnostics_.push_back({std::move(where), std::move(message)});
  }

  template <typename T>
  std::optional<T> scalar(const YAML::Node& node, const std::string& where) {
    if (!node.IsScalar()) {
      report(where, "expected a scalar value");
      return std::nullopt;
    }
    try {
      return node.as<T>();
    } catch (const YAML::Exception&) {
      report(where, "cannot read '" + node.Scalar() + "' as the expected type");
      return std::nullopt;
    }
  }

  std::vector<std::string> names(const YAML::Node& node, const std::string& where) {
    std::vector<std::string> out;
    if (!node.IsSequence()) {
      report(where, "expected a list");
      return out;
    }
    for (std::size_t i = 0; i < node.size(); ++i) {
      if (auto s = scalar<std::string>(node[i], where + "[" + std::to_string(i) + "]")) {
        out.push_back(*s);
      }
    }
    return out;
  }

  ParameterOverrides overrides(const YAML::Node& node, const std::string& where) {
    ParameterOverrides out;
    if (!node.IsMap()) {
      report(where, "expected a mapping of parameter values");
      return out;
    }
    for (const auto& entry : node) {
      const auto key = entry.first.as<std::string>();
      const auto path = where + "." + key;
      const YAML::Node& value = entry.second;
      if (!kParameterKeys.contains(key)) {
        report(path, "unknown parameter; expected one of N, T, K_max, beta, F, CR, p_m, eta_m, "
                     "selection_offset");
        continue;
      }
      if (key == "N") {
        if (value.IsScalar() && value.Scalar() == "auto") continue;
        out.N = scalar<std::size_t>(value, path);
      } else if (key == "T") {
        out.T = scalar<std::size_t>(value, path);
      } else if (key == "K_max") {
        out.K_max = scalar<std::size_t>(value, path);
      } else if (key == "p_m") {
        if (value.IsScalar() && value.Scalar() == "1/n") continue;
        out.p_m = scalar<Real>(value, path);
      } else {
        auto v = scalar<Real>(value, path);
        if (key == "beta") out.beta = v;
        if (key == "F") out.F = v;
        if (key == "CR") out.CR = v;
        if (key == "eta_m") out.eta_m = v;
        if (key == "selection_offset") out.selection_offset = v;
      }
    }
    return out;
  }

 private:
  std::vector<Diagnostic>& diagnostics_;
};

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += out.empty() ? s : ", " + s;
  return out;
}

void check_semantics(ParsedSpec& parsed) {
  auto& spec = parsed.spec;
  auto report = [&](std::string where, std::string msg) {
    parsed.diagnostics.push_back({std::move(where), std::move(msg)});
  };
  if (spec.algorithms.empty()) report("algorithms", "at least one algorithm is required");
  if (spec.problems.empty()) report("problems", "at least one problem is required");
  if (spec.runs == 0) report("runs", "must be >= 1");
  if (spec.workers == 0) report("workers", "must be >= 1");
  if (spec.trace_every == 0) report("trace_every", "must be >= 1");

  for (const auto& alg : spec.algorithms) {
    if (!parse_algorithm(alg)) {
      report("algorithms", "unknown algorithm '" + alg + "'; valid names: ocea, nsga2");
    }
  }
  if (!spec.reference_algorithm.empty() &&
      std::find(spec.algorithms.begin(), spec.algorithms.end(), spec.reference_algorithm) ==
          spec.algorithms.end()) {
    report("reference_algorithm", "'" + spec.reference_algorithm + "' is not in algorithms");
  }
  for (const auto& [key, _] : spec.parameters) {
    if (key != "all" && !parse_algorithm(key)) {
      report("parameters." + key, "not an algorithm name (use 'all' for shared values)");
    }
  }
  const auto known = problem_names();
  for (const auto& [key, _] : spec.problem_settings) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      report("problem_settings." + key, "unknown problem; valid names: " + join(known));
    }
  }

  for (const auto& name : spec.problems) {
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      report("problems", "unknown problem '" + name + "'; valid names: " + join(known));
      continue;
    }
    ProblemDefinition problem;
    try {
      problem = resolve_problem(spec, name);
    } catch (const std::exception& e) {
      report("problem_settings." + name, e.what());
      continue;
    }
    const auto settings = spec.problem_settings.find(name);
    const bool has_file =
        settings != spec.problem_settings.end() && settings->second.front_file.has_value();
    if (has_file && !std::filesystem::exists(*settings->second.front_file)) {
      report("problem_settings." + name + ".front_file",
             "file not found: " + settings->second.front_file->string());
    }
    for (const auto& alg : spec.algorithms) {
      if (!parse_algorithm(alg)) continue;
      try {
        resolve_config(spec, alg, problem).validate();
      } catch (const std::exception& e) {
        report("parameters(" + alg + ", " + name + ")", e.what());
      }
    }
  }

  if (spec.sweep) {
    const auto& sweep = *spec.sweep;
    if (!parse_algorithm(sweep.algorithm)) {
      report("sweep.algorithm", "unknown algorithm '" + sweep.algorithm + "'");
    }
    if (sweep.runs && *sweep.runs == 0) report("sweep.runs", "must be >= 1");
    for (const auto& [param, values] : sweep.axes) {
      if (!kParameterKeys.contains(param)) {
        report("sweep.axes." + param, "unknown parameter");
        continue;
      }
      if (values.empty()) report("sweep.axes." + param, "needs at least one value");
    }
  }
}

}  // namespace

ParsedSpec parse_spec(std::string_view yaml_text, const std::filesystem::path& base_dir) {
  ParsedSpec parsed;
  auto& spec = parsed.spec;
  spec.source_hash = fnv1a_hex(yaml_text);
  Reader read(parsed.diagnostics);

  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    read.report("(document)", std::string("YAML parse error: ") + e.what());
    return parsed;
  }
  if (!root.IsMap()) {
    read.report("(document)", "expected a mapping at top level");
    return parsed;
  }
  auto resolve_path = [&](const std::filesystem::path& p) {
    return p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  };

  for (const auto& entry : root) {
    const auto key = entry.first.as<std::string>();
    const YAML::Node& value = entry.second;
    if (!kTopLevelKeys.contains(key)) {
      read.report(key, "unknown key");
      continue;
    }
    if (key == "name") {
      if (auto v = read.scalar<std::string>(value, key)) spec.name = *v;
    } else if (key == "spec_version") {
      auto v = read.scalar<std::string>(value, key);
      if (v && *v != kSpecVersion) {
        read.report(key, "unsupported version '" + *v + "'; expected " + std::string(kSpecVersion));
      }
    } else if (key == "algorithms") {
      spec.algorithms = read.names(value, key);
    } else if (key == "problems") {
      spec.problems = read.names(value, key);
    } else if (key == "runs") {
      if (auto v = read.scalar<std::size_t>(value, key)) spec.runs = *v;
    } else if (key == "base_seed") {
      if (auto v = read.scalar<std::uint64_t>(value, key)) spec.base_seed = *v;
    } else if (key == "workers") {
      if (auto v = read.scalar<std::size_t>(value, key)) spec.workers = *v;
    } else if (key == "trace_every") {
      if (auto v = read.scalar<std::size_t>(value, key)) spec.trace_every = *v;
    } else if (key == "cluster_snapshots") {
      if (auto v = read.scalar<bool>(value, key)) spec.cluster_snapshots = *v;
    } else if (key == "output") {
      if (auto v = read.scalar<std::string>(value, key)) spec.output = resolve_path(*v);
    } else if (key == "reference_algorithm") {
      if (auto v = read.scalar<std::string>(value, key)) spec.reference_algorithm = *v;
    } else if (key == "parameters") {
      if (!value.IsMap()) {
        read.report(key, "expected a mapping keyed by algorithm name or 'all'");
        continue;
      }
      for (const auto& group : value) {
        const auto name = group.first.as<std::string>();
        spec.parameters[name] = read.overrides(group.second, key + "." + name);
      }
    } else if (key == "problem_settings") {
      if (!value.IsMap()) {
        read.report(key, "expected a mapping keyed by problem name");
        continue;
      }
      for (const auto& group : value) {
        const auto name = group.first.as<std::string>();
        const auto where = key + "." + name;
        ProblemSettings settings;
        if (!group.second.IsMap()) {
          read.report(where, "expected a mapping");
          continue;
        }
        for (const auto& field : group.second) {
          const auto fkey = field.first.as<std::string>();
          if (fkey == "n") {
            if (auto v = read.scalar<long>(field.second, where + ".n")) settings.n = *v;
          } else if (fkey == "front_file") {
            if (auto v = read.scalar<std::string>(field.second, where + ".front_file")) {
              settings.front_file = resolve_path(*v);
            }
          } else if (fkey == "front_resolution") {
            settings.front_resolution =
                read.scalar<std::size_t>(field.second, where + ".front_resolution");
          } else {
            read.report(where + "." + fkey, "unknown key; expected n, front_file, front_resolution");
          }
        }
        spec.problem_settings[name] = settings;
      }
    } else if (key == "sweep") {
      SweepSpec sweep;
      if (!value.IsMap()) {
        read.report(key, "expected a mapping");
        continue;
      }
      for (const auto& field : value) {
        const auto fkey = field.first.as<std::string>();
        const auto where = key + "." + fkey;
        if (fkey == "algorithm") {
          if (auto v = read.scalar<std::string>(field.second, where)) sweep.algorithm = *v;
        } else if (fkey == "runs") {
          sweep.runs = read.scalar<std::size_t>(field.second, where);
        } else if (fkey == "axes") {
          if (!field.second.IsMap()) {
            read.report(where, "expected a mapping of parameter -> list of values");
            continue;
          }
          for (const auto& axis : field.second) {
            const auto param = axis.first.as<std::string>();
            std::vector<Real> values;
            if (!axis.second.IsSequence()) {
              read.report(where + "." + param, "expected a list of values");
              continue;
            }
            for (std::size_t i = 0; i < axis.second.size(); ++i) {
              if (auto v = read.scalar<Real>(axis.second[i],
                                             where + "." + param + "[" + std::to_string(i) + "]")) {
                values.push_back(*v);
              }
            }
            sweep.axes.emplace_back(param, std::move(values));
          }
        } else {
          read.report(where, "unknown key; expected algorithm, runs, axes");
        }
      }
      spec.sweep = std::move(sweep);
    }
  }
  if (spec.reference_algorithm.empty() && !spec.algorithms.empty()) {
    spec.reference_algorithm = spec.algorithms.front();
  }
  check_semantics(parsed);
  return parsed;
}

ParsedSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    ParsedSpec parsed;
    parsed.diagnostics.push_back({path.string(), "cannot open spec file"});
    return parsed;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_spec(buffer.str(), path.parent_path());
}

}  // namespace ocea::harness
