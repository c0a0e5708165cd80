// WFG toolkit, bi-objective instances WFG1..WFG9.
//
// Decision variables z_i live in [0, 2i]. The first k are position parameters,
// the remaining l = n - k are distance parameters. Each instance normalizes
// z to y in [0,1], applies its transformation chain, then maps the result
// onto a front shape scaled by S_m = 2m.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "ocea/problems.hpp"

namespace ocea::problems {
namespace {

constexpr Real kPi = std::numbers::pi;
constexpr Eigen::Index kObjectives = 2;

using Params = std::vector<Real>;

Real correct_to_01(Real a) {
  constexpr Real eps = 1.0e-10;
  if (a <= 0.0 && a >= -eps) return 0.0;
  if (a >= 1.0 && a <= 1.0 + eps) return 1.0;
  return std::clamp(a, 0.0, 1.0);
}

// --- transformation primitives -------------------------------------------

Real b_poly(Real y, Real alpha) { return correct_to_01(std::pow(y, alpha)); }

Real b_flat(Real y, Real A, Real B, Real C) {
  const Real t1 = std::min(0.0, std::floor(y - B)) * A * (B - y) / B;
  const Real t2 = std::min(0.0, std::floor(C - y)) * (1.0 - A) * (y - C) / (1.0 - C);
  return correct_to_01(A + t1 - t2);
}

Real b_param(Real y, Real u, Real A, Real B, Real C) {
  const Real v = A - (1.0 - 2.0 * u) * std::fabs(std::floor(0.5 - u) + A);
  return correct_to_01(std::pow(y, B + (C - B) * v));
}

Real s_linear(Real y, Real A) {
  return correct_to_01(std::fabs(y - A) / std::fabs(std::floor(A - y) + A));
}

Real s_decept(Real y, Real A, Real B, Real C) {
  const Real t1 = std::floor(y - A + B) * (1.0 - C + (A - B) / B) / (A - B);
  const Real t2 = std::floor(A + B - y) * (1.0 - C + (1.0 - A - B) / B) / (1.0 - A - B);
  return correct_to_01(1.0 + (std::fabs(y - A) - B) * (t1 + t2 + 1.0 / B));
}

Real s_multi(Real y, Real A, Real B, Real C) {
  const Real t = std::fabs(y - C) / (2.0 * (std::floor(C - y) + C));
  const Real num = 1.0 + std::cos((4.0 * A + 2.0) * kPi * (0.5 - t)) + 4.0 * B * t * t;
  return correct_to_01(num / (B + 2.0));
}

Real r_sum(const Params& y, const Params& w) {
  Real num = 0.0;
  Real den = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    num += w[i] * y[i];
    den += w[i];
  }
  return correct_to_01(num / den);
}

Real r_nonsep(const Params& y, std::size_t A) {
  const std::size_t size = y.size();
  Real num = 0.0;
  for (std::size_t j = 0; j < size; ++j) {
    num += y[j];
    for (std::size_t k = 0; k + 2 <= A; ++k) {
      num += std::fabs(y[j] - y[(j + k + 1) % size]);
    }
  }
  const auto a = static_cast<Real>(A);
  const Real half = std::ceil(a / 2.0);
  const Real den = static_cast<Real>(size) / a * half * (1.0 + 2.0 * a - 2.0 * half);
  return correct_to_01(num / den);
}

Params slice(const Params& y, std::size_t from, std::size_t to) {
  return {y.begin() + static_cast<std::ptrdiff_t>(from),
          y.begin() + static_cast<std::ptrdiff_t>(to)};
}

// --- shared transformation stages ------------------------------------------

Params distance_linear(Params y, std::size_t k) {
  for (std::size_t i = k; i < y.size(); ++i) y[i] = s_linear(y[i], 0.35);
  return y;
}

/// Reduces to two parameters: a weighted sum over the position block and one
/// over the distance block.
Params reduce_sum(const Params& y, std::size_t k, bool index_weights) {
  Params w(y.size(), 1.0);
  if (index_weights) {
    for (std::size_t i = 0; i < y.size(); ++i) w[i] = 2.0 * static_cast<Real>(i + 1);
  }
  return {r_sum(slice(y, 0, k), slice(w, 0, k)),
          r_sum(slice(y, k, y.size()), slice(w, k, y.size()))};
}

Params reduce_nonsep(const Params& y, std::size_t k) {
  const std::size_t l = y.size() - k;
  return {r_nonsep(slice(y, 0, k), k), r_nonsep(slice(y, k, y.size()), l)};
}

/// Pairs neighbouring distance parameters (WFG2, WFG3).
Params pair_distance(const Params& y, std::size_t k) {
  const std::size_t l = y.size() - k;
  Params out(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(k));
  for (std::size_t i = 0; i < l / 2; ++i) {
    out.push_back(r_nonsep({y[k + 2 * i], y[k + 2 * i + 1]}, 2));
  }
  return out;
}

Params bias_by_following(Params y, std::size_t count) {
  // y_i biased by the mean of the parameters after it; each step reads the
  // untransformed values.
  const Params original = y;
  for (std::size_t i = 0; i < count; ++i) {
    const Params rest = slice(original, i + 1, original.size());
    const Real u = r_sum(rest, Params(rest.size(), 1.0));
    y[i] = b_param(original[i], u, 0.98 / 49.98, 0.02, 50.0);
  }
  return y;
}

// --- shapes ----------------------------------------------------------------

struct Shape {
  enum Kind { kConvexMixed, kConvexDisc, kLinear, kConcave } kind;
};

// With two objectives the only position constant is A_1 = 1 for every
// instance (WFG3's zeroed constants start at A_2), so x_1 = t_1.
ObjectiveVector finish(const Params& t, Shape shape) {
  const Real xm = t[1];
  const Real x1 = std::max(xm, 1.0) * (t[0] - 0.5) + 0.5;
  Real h1 = 0.0;
  Real h2 = 0.0;
  switch (shape.kind) {
    case Shape::kConvexMixed: {
      h1 = 1.0 - std::cos(x1 * kPi / 2.0);
      constexpr Real A = 5.0;
      h2 = 1.0 - x1 - std::cos(2.0 * A * kPi * x1 + kPi / 2.0) / (2.0 * A * kPi);
      break;
    }
    case Shape::kConvexDisc: {
      h1 = 1.0 - std::cos(x1 * kPi / 2.0);
      constexpr Real A = 5.0;
      const Real c = std::cos(A * x1 * kPi);
      h2 = 1.0 - x1 * c * c;
      break;
    }
    case Shape::kLinear:
      h1 = x1;
      h2 = 1.0 - x1;
      break;
    case Shape::kConcave:
      h1 = std::sin(x1 * kPi / 2.0);
      h2 = std::cos(x1 * kPi / 2.0);
      break;
  }
  ObjectiveVector f(kObjectives);
  f << xm + 2.0 * h1, xm + 4.0 * h2;
  return f;
}

ObjectiveVector wfg_objectives(int index, const DecisionVector& z, std::size_t k) {
  const auto n = static_cast<std::size_t>(z.size());
  Params y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = correct_to_01(z[static_cast<Eigen::Index>(i)] / (2.0 * static_cast<Real>(i + 1)));
  }

  switch (index) {
    case 1: {
      y = distance_linear(std::move(y), k);
      for (std::size_t i = k; i < n; ++i) y[i] = b_flat(y[i], 0.8, 0.75, 0.85);
      for (auto& v : y) v = b_poly(v, 0.02);
      return finish(reduce_sum(y, k, true), {Shape::kConvexMixed});
    }
    case 2:
    case 3: {
      y = pair_distance(distance_linear(std::move(y), k), k);
      const Params t = reduce_sum(y, k, false);
      return index == 2 ? finish(t, {Shape::kConvexDisc})
                        : finish(t, {Shape::kLinear});
    }
    case 4:
      for (auto& v : y) v = s_multi(v, 30.0, 10.0, 0.35);
      return finish(reduce_sum(y, k, false), {Shape::kConcave});
    case 5:
      for (auto& v : y) v = s_decept(v, 0.35, 0.001, 0.05);
      return finish(reduce_sum(y, k, false), {Shape::kConcave});
    case 6:
      y = distance_linear(std::move(y), k);
      return finish(reduce_nonsep(y, k), {Shape::kConcave});
    case 7:
      y = distance_linear(bias_by_following(std::move(y), k), k);
      return finish(reduce_sum(y, k, false), {Shape::kConcave});
    case 8: {
      const Params original = y;
      for (std::size_t i = k; i < n; ++i) {
        const Params before = slice(original, 0, i);
        const Real u = r_sum(before, Params(before.size(), 1.0));
        y[i] = b_param(original[i], u, 0.98 / 49.98, 0.02, 50.0);
      }
      y = distance_linear(std::move(y), k);
      return finish(reduce_sum(y, k, false), {Shape::kConcave});
    }
    default: {
      y = bias_by_following(std::move(y), n - 1);
      for (std::size_t i = 0; i < n; ++i) {
        y[i] = i < k ? s_decept(y[i], 0.35, 0.001, 0.05) : s_multi(y[i], 30.0, 95.0, 0.35);
      }
      return finish(reduce_nonsep(y, k), {Shape::kConcave});
    }
  }
}

}  // namespace

ProblemDefinition wfg(int index, Eigen::Index n, Eigen::Index k) {
  if (index < 1 || index > 9) throw ContractViolation("WFG index must be in 1..9");
  if (k < 1 || n <= k) throw ContractViolation("WFG needs 1 <= k < n");
  if ((index == 2 || index == 3) && (n - k) % 2 != 0) {
    throw ContractViolation("WFG2/WFG3 need an even number of distance parameters");
  }
  ProblemDefinition p;
  p.name = "WFG" + std::to_string(index);
  p.n = n;
  p.m = kObjectives;
  DecisionVector hi(n);
  for (Eigen::Index i = 0; i < n; ++i) hi[i] = 2.0 * static_cast<Real>(i + 1);
  p.bounds = Bounds(DecisionVector::Zero(n), hi);
  const auto position = static_cast<std::size_t>(k);
  p.objectives = [index, position](const DecisionVector& z) {
    return wfg_objectives(index, z, position);
  };
  // Distance parameters at 0.35 of their range are Pareto optimal for every
  // instance except WFG8/WFG9, whose optimal distance values depend on the
  // other parameters.
  if (index <= 7) {
    p.pareto_set_point = [n, k](const DecisionVector& t) {
      DecisionVector z(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        const Real range = 2.0 * static_cast<Real>(i + 1);
        z[i] = i < k ? t[0] * range : 0.35 * range;
      }
      return z;
    };
  }
  p.metric_reference = ObjectiveVector{{3.0, 5.0}};
  return p;
}

}  // namespace ocea::problems
