#include "ocea/harness/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ocea::harness {

std::string mark(Comparison comparison) {
  switch (comparison) {
    case Comparison::kBetter:
      return "†";
    case Comparison::kWorse:
      return "§";
    case Comparison::kSimilar:
      break;
  }
  return "≈";
}

Real mean(std::span<const Real> values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<Real>(values.size());
}

Real sample_std(std::span<const Real> values) {
  if (values.size() < 2) return 0.0;
  const Real mu = mean(values);
  Real ss = 0.0;
  for (Real v : values) ss += (v - mu) * (v - mu);
  return std::sqrt(ss / static_cast<Real>(values.size() - 1));
}

Real median(std::span<const Real> values) {
  if (values.empty()) return 0.0;
  std::vector<Real> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t h = sorted.size() / 2;
  return sorted.size() % 2 ? sorted[h] : 0.5 * (sorted[h - 1] + sorted[h]);
}

std::vector<std::size_t> rank_by_mean(std::span<const Real> means, Sense sense) {
  std::vector<std::size_t> order(means.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sense == Sense::kMinimize ? means[a] < means[b] : means[a] > means[b];
  });
  std::vector<std::size_t> ranks(means.size());
  for (std::size_t r = 0; r < order.size(); ++r) ranks[order[r]] = r + 1;
  return ranks;
}

RankSumResult rank_sum_test(std::span<const Real> a, std::span<const Real> b) {
  const std::size_t n1 = a.size(), n2 = b.size(), n = n1 + n2;
  std::vector<std::pair<Real, bool>> pooled;
  pooled.reserve(n);
  for (Real v : a) pooled.emplace_back(v, true);
  for (Real v : b) pooled.emplace_back(v, false);
  std::sort(pooled.begin(), pooled.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });

  RankSumResult result;
  Real tie_term = 0.0;  // sum of t^3 - t over tie groups
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && pooled[j].first == pooled[i].first) ++j;
    const Real midrank = 0.5 * static_cast<Real>(i + 1 + j);
    const auto t = static_cast<Real>(j - i);
    tie_term += t * t * t - t;
    for (std::size_t k = i; k < j; ++k) {
      if (pooled[k].second) result.rank_sum_a += midrank;
    }
    i = j;
  }
  const auto N1 = static_cast<Real>(n1), N2 = static_cast<Real>(n2), N = static_cast<Real>(n);
  const Real u = result.rank_sum_a - N1 * (N1 + 1.0) / 2.0;
  const Real mean_u = N1 * N2 / 2.0;
  const Real var_u = N1 * N2 / 12.0 * ((N + 1.0) - tie_term / (N * (N - 1.0)));
  if (var_u <= 0.0) return result;
  result.z = (u - mean_u) / std::sqrt(var_u);
  result.p_value = std::erfc(std::abs(result.z) / std::sqrt(2.0));
  return result;
}

Comparison wilcoxon_rank_sum(std::span<const Real> a, std::span<const Real> b, Real alpha,
                             Sense sense) {
  if (a.size() < 2 || b.size() < 2) {
    throw ContractViolation("wilcoxon_rank_sum: each sample needs at least two values");
  }
  const RankSumResult test = rank_sum_test(a, b);
  if (!(test.p_value < alpha)) return Comparison::kSimilar;
  Real diff = median(a) - median(b);
  if (diff == 0.0) {
    // Equal medians: compare mean ranks instead.
    const Real expected = static_cast<Real>(a.size()) * (a.size() + b.size() + 1) / 2.0;
    diff = test.rank_sum_a - expected;
  }
  if (diff == 0.0) return Comparison::kSimilar;
  const bool a_lower = diff < 0.0;
  return a_lower == (sense == Sense::kMinimize) ? Comparison::kBetter : Comparison::kWorse;
}

}  // namespace ocea::harness
