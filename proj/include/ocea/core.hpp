#ifndef OCEA_CORE_HPP_
#define OCEA_CORE_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace ocea {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Real = double;
using DecisionVector = Vector<Real>;
using ObjectiveVector = Vector<Real>;

/// Stable identity of a solution for the lifetime of a run. Two solutions with
/// equal decision vectors but different ids are distinct individuals.
using SolutionId = std::uint64_t;

struct Solution {
  SolutionId id = 0;
  DecisionVector x;
  ObjectiveVector f;
  std::optional<std::size_t> cluster_id;
};

/// Raised when a caller breaks an operation's precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Per-dimension box [lower_i, upper_i].
struct Bounds {
  DecisionVector lower;
  DecisionVector upper;

  Bounds() = default;
  Bounds(DecisionVector lo, DecisionVector hi);
  static Bounds uniform(Eigen::Index n, Real lo, Real hi);

  [[nodiscard]] Eigen::Index size() const { return lower.size(); }
  [[nodiscard]] bool contains(const DecisionVector& x) const;
};

/// Pareto dominance for minimization: u is no worse everywhere and strictly
/// better somewhere. No epsilon.
template <typename DerivedU, typename DerivedV>
bool dominates(const Eigen::MatrixBase<DerivedU>& u,
               const Eigen::MatrixBase<DerivedV>& v) {
  if (u.size() != v.size()) {
    throw ContractViolation("dominates: objective vectors differ in length (" +
                            std::to_string(u.size()) + " vs " +
                            std::to_string(v.size()) + ")");
  }
  bool strictly_better = false;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (u[i] > v[i]) return false;
    if (u[i] < v[i]) strictly_better = true;
  }
  return strictly_better;
}

/// Componentwise repair into the box.
template <typename Derived>
DecisionVector clamp_to_bounds(const Eigen::MatrixBase<Derived>& x,
                               const Bounds& bounds) {
  return x.derived().cwiseMax(bounds.lower).cwiseMin(bounds.upper);
}

/// Deterministic random source backed by std::mt19937_64, whose output
/// sequence is fixed by the C++ standard. Real and integer draws are derived
/// from raw 64-bit outputs with explicit arithmetic rather than the
/// implementation-defined std distributions, so a seed replays identically on
/// every platform.
class RandomSource {
 public:
  static constexpr std::string_view kGeneratorName = "mt19937_64";

  explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  [[nodiscard]] std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  Real uniform() {
    return static_cast<Real>(engine_() >> 11) * 0x1.0p-53;
  }

  Real uniform(Real lo, Real hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n). Rejection sampling keeps it unbiased.
  std::size_t index(std::size_t n);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace ocea

#endif  // OCEA_CORE_HPP_
