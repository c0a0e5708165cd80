// GLT test suite: two- and three-objective problems with nonlinear variable
// linkage x_i = sin(2*pi*x_1 + i*pi/n) on the Pareto set and complex
// (disconnected, strongly convex) fronts.

#include <cmath>
#include <numbers>

#include "ocea/problems.hpp"
#include "problems_detail.hpp"

namespace ocea::problems {
namespace {

constexpr Real kPi = std::numbers::pi;

Real sign(Real v) { return static_cast<Real>((v > 0) - (v < 0)); }

/// Linkage distance over variables first..n (1-based first).
Real linkage(const DecisionVector& x, Eigen::Index first) {
  const auto n = static_cast<Real>(x.size());
  Real g = 0.0;
  for (Eigen::Index i = first; i <= x.size(); ++i) {
    const Real d = x[i - 1] - std::sin(2.0 * kPi * x[0] + static_cast<Real>(i) * kPi / n);
    g += d * d;
  }
  return g;
}

ObjectiveVector glt_objectives(int index, const DecisionVector& x) {
  if (index <= 4) {
    const Real g = linkage(x, 2);
    const Real x1 = x[0];
    ObjectiveVector f(2);
    switch (index) {
      case 1:
        f << (1 + g) * x1, (1 + g) * (2.0 - x1 - sign(std::cos(2.0 * kPi * x1)));
        break;
      case 2:
        f << (1 + g) * (1.0 - std::cos(kPi * x1 / 2.0)),
            (1 + g) * (10.0 - 10.0 * std::sin(kPi * x1 / 2.0));
        break;
      case 3:
        f << (1 + g) * x1,
            x1 <= 0.05 ? (1 + g) * (1.0 - 19.0 * x1) : (1 + g) * (1.0 / 19.0 - x1 / 19.0);
        break;
      default: {
        const Real s = std::sqrt(x1);
        const Real c = std::cos(3.0 * kPi * s);
        f << (1 + g) * x1, (1 + g) * (2.0 - 2.0 * s * c * c);
        break;
      }
    }
    return f;
  }
  const Real g = linkage(x, 3);
  const Real a = kPi * x[0] / 2.0;
  const Real b = kPi * x[1] / 2.0;
  ObjectiveVector f(3);
  f[0] = (1 + g) * (1.0 - std::cos(a)) * (1.0 - std::cos(b));
  f[1] = (1 + g) * (1.0 - std::cos(a)) * (1.0 - std::sin(b));
  if (index == 5) {
    f[2] = (1 + g) * (1.0 - std::sin(a));
  } else {
    f[2] = (1 + g) * (2.0 - std::sin(a) - sign(std::cos(4.0 * kPi * x[0])));
  }
  return f;
}

}  // namespace

ProblemDefinition glt(int index, Eigen::Index n) {
  if (index < 1 || index > 6) throw ContractViolation("GLT index must be in 1..6");
  const Eigen::Index m = index <= 4 ? 2 : 3;
  if (n < m + 1) throw ContractViolation("GLT" + std::to_string(index) + " needs n > m");

  ProblemDefinition p;
  p.name = "GLT" + std::to_string(index);
  p.n = n;
  p.m = m;
  DecisionVector lo = DecisionVector::Constant(n, -1.0);
  DecisionVector hi = DecisionVector::Constant(n, 1.0);
  lo.head(m - 1).setZero();
  p.bounds = Bounds(lo, hi);
  p.objectives = [index](const DecisionVector& x) { return glt_objectives(index, x); };
  p.pareto_set_point = [n, m](const DecisionVector& t) {
    DecisionVector x(n);
    x.head(m - 1) = t.head(m - 1);
    for (Eigen::Index i = m; i <= n; ++i) {
      x[i - 1] = std::sin(2.0 * kPi * x[0] + static_cast<Real>(i) * kPi / static_cast<Real>(n));
    }
    return x;
  };
  p.front_sampler = detail::front_from_pareto_set(p.pareto_set_point, p.objectives, m);

  switch (index) {
    case 1: p.metric_reference = ObjectiveVector{{2.0, 2.0}}; break;
    case 2: p.metric_reference = ObjectiveVector{{2.0, 11.0}}; break;
    case 3: p.metric_reference = ObjectiveVector{{2.0, 2.0}}; break;
    case 4: p.metric_reference = ObjectiveVector{{2.0, 3.0}}; break;
    default: p.metric_reference = ObjectiveVector::Constant(3, 2.0); break;
  }
  return p;
}

}  // namespace ocea::problems
