#ifndef OCEA_VARIATION_HPP_
#define OCEA_VARIATION_HPP_

#include <span>
#include <stdexcept>

#include "ocea/core.hpp"
#include "ocea/problems.hpp"

namespace ocea {

struct VariationParams {
  Real F = 0.6;
  Real CR = 1.0;
  Real p_m = 0.1;
  Real eta_m = 20.0;

  /// Throws ContractViolation unless every field is finite, CR and p_m lie in
  /// [0,1] and eta_m >= 0.
  void validate() const;
};

/// Raised when a mating pool cannot supply two distinct parents.
class DegeneratePool : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// DE/rand/1-style trial around `x`: component i becomes
/// x_i + F (x1_i - x2_i) when a fresh uniform draw is <= CR. One draw per
/// component, in index order.
DecisionVector de_trial(const DecisionVector& x, const DecisionVector& x1,
                        const DecisionVector& x2, const VariationParams& params,
                        RandomSource& rng);

/// Polynomial mutation of an in-bounds vector, clamped afterwards.
///
/// Per component: one draw decides mutation (< p_m); a mutated component
/// consumes a second draw r, and moves by delta * (b - a) with
///   delta = [2r + (1-2r) ((b-y)/(b-a))^(eta+1)]^(1/(eta+1)) - 1       r < 0.5
///   delta = 1 - [2-2r + (2r-1) ((y-a)/(b-a))^(eta+1)]^(1/(eta+1))     otherwise
/// Components with a degenerate range (a = b) are skipped without drawing.
DecisionVector polynomial_mutation(const DecisionVector& y, const Bounds& bounds,
                                   const VariationParams& params, RandomSource& rng);

/// Mutation step for a single component given the branch draw `r`.
Real polynomial_delta(Real y, Real lower, Real upper, Real eta_m, Real r);

/// Full offspring generation: two distinct pool members (by position, drawn
/// uniformly without replacement) drive de_trial around `x`, followed by
/// repair, polynomial mutation, repair and evaluation.
///
/// Throws DegeneratePool when `pool` has fewer than two members.
Solution sol_gen(const Solution& x, std::span<const Solution* const> pool,
                 const VariationParams& params, RandomSource& rng,
                 const ProblemDefinition& problem);

}  // namespace ocea

#endif  // OCEA_VARIATION_HPP_
