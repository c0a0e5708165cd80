#ifndef OCEA_METRICS_HPP_
#define OCEA_METRICS_HPP_

#include <optional>
#include <stdexcept>

#include "ocea/problems.hpp"

namespace ocea {

class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Indicator values for one archive snapshot. An indicator is absent when the
/// problem lacks the data it needs (reference front or HV reference point).
struct MetricReport {
  std::size_t generation = 0;
  std::optional<Real> igd;
  std::optional<Real> hv;
  double wall_time = 0.0;  // seconds since the run started
};

/// Inverted generational distance: mean over reference points of the
/// Euclidean distance to the nearest approximation point.
Real igd(const ObjectiveSet& approx, const ObjectiveSet& reference);

/// Hypervolume against the problem's registered metric reference point.
/// Throws ConfigurationError if none is registered.
Real hv_metric(const ObjectiveSet& approx, const ProblemDefinition& problem);

}  // namespace ocea

#endif  // OCEA_METRICS_HPP_
