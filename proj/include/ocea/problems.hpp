#ifndef OCEA_PROBLEMS_HPP_
#define OCEA_PROBLEMS_HPP_

#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ocea/core.hpp"

namespace ocea {

/// A set of objective vectors stored one point per column.
using ObjectiveSet = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

struct ReferenceFront {
  ObjectiveSet points;

  [[nodiscard]] std::size_t resolution() const {
    return static_cast<std::size_t>(points.cols());
  }
};

class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownProblem : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ProblemDefinition {
  std::string name;
  Eigen::Index n = 0;
  Eigen::Index m = 0;
  Bounds bounds;
  std::function<ObjectiveVector(const DecisionVector&)> objectives;
  /// Produces `R` points of the Pareto front; empty when the front has no
  /// usable analytic description.
  std::function<ReferenceFront(std::size_t)> front_sampler;
  /// Maps a point of [0,1]^(m-1) onto a Pareto-optimal decision vector, when
  /// the Pareto set is known in closed form.
  std::function<DecisionVector(const DecisionVector&)> pareto_set_point;
  /// Fixed hypervolume reference point used when reporting the HV metric.
  std::optional<ObjectiveVector> metric_reference;

  [[nodiscard]] bool has_analytic_front() const {
    return static_cast<bool>(front_sampler);
  }
};

/// Evaluates `x`; throws EvaluationError naming the first non-finite
/// objective component.
ObjectiveVector evaluate(const ProblemDefinition& problem,
                         const DecisionVector& x);

/// Samples `R` points of the analytic Pareto front. Throws UnsupportedError for
/// problems whose front must be loaded from a file.
ReferenceFront sample_reference_front(const ProblemDefinition& problem,
                                      std::size_t R);

/// Default front resolution: 1000 points for two objectives, 10000 for three.
std::size_t default_front_resolution(Eigen::Index m);

/// Plaintext front format: one point per line, whitespace-separated reals.
ReferenceFront read_front(const std::filesystem::path& path);
ReferenceFront parse_front(std::string_view text);
void write_front(const std::filesystem::path& path, const ObjectiveSet& points);
std::string format_front(const ObjectiveSet& points);

/// Names accepted by make_problem, in registry order.
std::vector<std::string> problem_names();

/// Builds a registered problem. `n` overrides the default decision dimension
/// (SCH is fixed at n=1). Throws UnknownProblem listing valid names.
ProblemDefinition make_problem(std::string_view name,
                               std::optional<Eigen::Index> n = std::nullopt);

Eigen::Index default_dimension(std::string_view name);

namespace problems {

ProblemDefinition sch();
ProblemDefinition zdt1(Eigen::Index n = 10);

/// GLT1..GLT6, `index` in 1..6.
ProblemDefinition glt(int index, Eigen::Index n = 10);

/// Bi-objective WFG1..WFG9 with `k` position parameters; n - k distance
/// parameters.
ProblemDefinition wfg(int index, Eigen::Index n = 30, Eigen::Index k = 4);

}  // namespace problems

}  // namespace ocea

#endif  // OCEA_PROBLEMS_HPP_
