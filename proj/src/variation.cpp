#include "ocea/variation.hpp"

#include <cmath>

namespace ocea {

void VariationParams::validate() const {
  if (!std::isfinite(F) || !std::isfinite(CR) || !std::isfinite(p_m) || !std::isfinite(eta_m)) {
    throw ContractViolation("variation parameters must be finite");
  }
  if (CR < 0.0 || CR > 1.0) throw ContractViolation("CR must lie in [0,1]");
  if (p_m < 0.0 || p_m > 1.0) throw ContractViolation("p_m must lie in [0,1]");
  if (eta_m < 0.0) throw ContractViolation("eta_m must be >= 0");
}

DecisionVector de_trial(const DecisionVector& x, const DecisionVector& x1,
                        const DecisionVector& x2, const VariationParams& params,
                        RandomSource& rng) {
  if (x1.size() != x.size() || x2.size() != x.size()) {
    throw ContractViolation("de_trial: parent dimensions differ");
  }
  DecisionVector y = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (rng.uniform() <= params.CR) y[i] = x[i] + params.F * (x1[i] - x2[i]);
  }
  return y;
}

Real polynomial_delta(Real y, Real lower, Real upper, Real eta_m, Real r) {
  const Real range = upper - lower;
  const Real power = 1.0 / (eta_m + 1.0);
  if (r < 0.5) {
    const Real room = (upper - y) / range;
    return std::pow(2.0 * r + (1.0 - 2.0 * r) * std::pow(room, eta_m + 1.0), power) - 1.0;
  }
  const Real room = (y - lower) / range;
  return 1.0 - std::pow(2.0 - 2.0 * r + (2.0 * r - 1.0) * std::pow(room, eta_m + 1.0), power);
}

DecisionVector polynomial_mutation(const DecisionVector& y, const Bounds& bounds,
                                   const VariationParams& params, RandomSource& rng) {
  DecisionVector out = y;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const Real lo = bounds.lower[i];
    const Real hi = bounds.upper[i];
    if (lo == hi) continue;
    if (rng.uniform() < params.p_m) {
      const Real r = rng.uniform();
      out[i] = y[i] + polynomial_delta(y[i], lo, hi, params.eta_m, r) * (hi - lo);
    }
  }
  return clamp_to_bounds(out, bounds);
}

Solution sol_gen(const Solution& x, std::span<const Solution* const> pool,
                 const VariationParams& params, RandomSource& rng,
                 const ProblemDefinition& problem) {
  if (pool.size() < 2) {
    throw DegeneratePool("sol_gen: mating pool has " + std::to_string(pool.size()) +
                         " member(s), need two distinct parents");
  }
  const std::size_t first = rng.index(pool.size());
  std::size_t second = rng.index(pool.size() - 1);
  if (second >= first) ++second;

  const DecisionVector trial = de_trial(x.x, pool[first]->x, pool[second]->x, params, rng);
  const DecisionVector repaired = clamp_to_bounds(trial, problem.bounds);
  Solution child;
  child.x = polynomial_mutation(repaired, problem.bounds, params, rng);
  child.f = evaluate(problem, child.x);
  return child;
}

}  // namespace ocea
