#include "ocea/core.hpp"

#include <limits>

namespace ocea {

Bounds::Bounds(DecisionVector lo, DecisionVector hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.size() != upper.size()) {
    throw ContractViolation("Bounds: lower and upper differ in length");
  }
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    if (!(lower[i] <= upper[i])) {
      throw ContractViolation("Bounds: lower > upper in dimension " +
                              std::to_string(i));
    }
  }
}

Bounds Bounds::uniform(Eigen::Index n, Real lo, Real hi) {
  return {DecisionVector::Constant(n, lo), DecisionVector::Constant(n, hi)};
}

bool Bounds::contains(const DecisionVector& x) const {
  if (x.size() != lower.size()) return false;
  return (x.array() >= lower.array()).all() && (x.array() <= upper.array()).all();
}

std::size_t RandomSource::index(std::size_t n) {
  if (n == 0) throw ContractViolation("RandomSource::index: empty range");
  const std::uint64_t range = n;
  // Largest multiple of range that fits; draws above it are rejected.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t draw = engine_();
  while (draw >= limit) draw = engine_();
  return static_cast<std::size_t>(draw % range);
}

}  // namespace ocea
