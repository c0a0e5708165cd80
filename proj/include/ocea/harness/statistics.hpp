#ifndef OCEA_HARNESS_STATISTICS_HPP_
#define OCEA_HARNESS_STATISTICS_HPP_

#include <span>
#include <string>
#include <vector>

#include "ocea/core.hpp"

namespace ocea::harness {

enum class Comparison { kBetter, kWorse, kSimilar };
enum class Sense { kMinimize, kMaximize };

/// Table marks: better "†", worse "§", similar "≈".
std::string mark(Comparison comparison);

Real mean(std::span<const Real> values);
/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
Real sample_std(std::span<const Real> values);
Real median(std::span<const Real> values);

/// Ranks 1..k of the given means; ties keep input order.
std::vector<std::size_t> rank_by_mean(std::span<const Real> means, Sense sense);

struct RankSumResult {
  Real rank_sum_a = 0.0;
  Real z = 0.0;
  Real p_value = 1.0;
};

/// Two-sided rank-sum test. Midranks for ties, normal approximation with tie
/// correction, no continuity correction. A zero variance gives z = 0, p = 1.
RankSumResult rank_sum_test(std::span<const Real> a, std::span<const Real> b);

/// Compares sample `a` against `b`. Significant at `alpha` means better or
/// worse according to the medians (rank sums when the medians are equal).
/// Throws ContractViolation when either sample has fewer than two values.
Comparison wilcoxon_rank_sum(std::span<const Real> a, std::span<const Real> b, Real alpha = 0.05,
                             Sense sense = Sense::kMinimize);

}  // namespace ocea::harness

#endif  // OCEA_HARNESS_STATISTICS_HPP_
