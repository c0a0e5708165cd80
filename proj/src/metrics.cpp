#include "ocea/metrics.hpp"

#include <cmath>

#include "ocea/selection.hpp"

namespace ocea {

Real igd(const ObjectiveSet& approx, const ObjectiveSet& reference) {
  if (approx.cols() == 0 || reference.cols() == 0) {
    throw ContractViolation("igd: empty point set");
  }
  if (approx.rows() != reference.rows()) {
    throw ContractViolation("igd: objective counts differ");
  }
  Real total = 0.0;
  for (Eigen::Index j = 0; j < reference.cols(); ++j) {
    total += std::sqrt((approx.colwise() - reference.col(j)).colwise().squaredNorm().minCoeff());
  }
  return total / static_cast<Real>(reference.cols());
}

Real hv_metric(const ObjectiveSet& approx, const ProblemDefinition& problem) {
  if (!problem.metric_reference) {
    throw ConfigurationError(problem.name + " has no registered HV reference point");
  }
  return hypervolume(approx, *problem.metric_reference);
}

}  // namespace ocea
