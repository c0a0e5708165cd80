#include "ocea/problems.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "problems_detail.hpp"

namespace ocea {

ObjectiveVector evaluate(const ProblemDefinition& problem,
                         const DecisionVector& x) {
  if (x.size() != problem.n) {
    throw ContractViolation("evaluate(" + problem.name + "): expected " +
                            std::to_string(problem.n) + " decision variables, got " +
                            std::to_string(x.size()));
  }
  ObjectiveVector f = problem.objectives(x);
  if (f.size() != problem.m) {
    throw EvaluationError(problem.name + ": objective map returned " +
                          std::to_string(f.size()) + " values, expected " +
                          std::to_string(problem.m));
  }
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    if (!std::isfinite(f[i])) {
      std::ostringstream msg;
      msg << problem.name << ": objective f" << (i + 1) << " is non-finite ("
          << f[i] << ")";
      throw EvaluationError(msg.str());
    }
  }
  return f;
}

ReferenceFront sample_reference_front(const ProblemDefinition& problem,
                                      std::size_t R) {
  if (!problem.has_analytic_front()) {
    throw UnsupportedError(problem.name +
                           " has no analytic Pareto front; load one from a file");
  }
  if (R == 0) throw ContractViolation("sample_reference_front: R must be positive");
  return problem.front_sampler(R);
}

std::size_t default_front_resolution(Eigen::Index m) {
  return m <= 2 ? 1000 : 10000;
}

ReferenceFront parse_front(std::string_view text) {
  std::vector<std::vector<Real>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<Real> row;
    std::string token;
    while (fields >> token) {
      std::size_t used = 0;
      Real value = 0;
      try {
        value = std::stod(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size()) {
        throw std::runtime_error("front: line " + std::to_string(line_no) +
                                 ": not a number: '" + token + "'");
      }
      row.push_back(value);
    }
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::runtime_error("front: line " + std::to_string(line_no) + " has " +
                               std::to_string(row.size()) + " values, expected " +
                               std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  ReferenceFront front;
  if (rows.empty()) return front;
  const auto m = static_cast<Eigen::Index>(rows.front().size());
  front.points.resize(m, static_cast<Eigen::Index>(rows.size()));
  for (std::size_t j = 0; j < rows.size(); ++j) {
    for (Eigen::Index i = 0; i < m; ++i) {
      front.points(i, static_cast<Eigen::Index>(j)) = rows[j][static_cast<std::size_t>(i)];
    }
  }
  return front;
}

ReferenceFront read_front(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open front file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_front(buffer.str());
}

std::string format_front(const ObjectiveSet& points) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (Eigen::Index j = 0; j < points.cols(); ++j) {
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      if (i > 0) out << ' ';
      out << points(i, j);
    }
    out << '\n';
  }
  return out.str();
}

void write_front(const std::filesystem::path& path, const ObjectiveSet& points) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write front file " + path.string());
  out << format_front(points);
}

namespace detail {

ObjectiveSet nondominated_columns(const ObjectiveSet& points) {
  const Eigen::Index k = points.cols();
  std::vector<Eigen::Index> keep;
  if (points.rows() == 2) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      if (points(0, a) != points(0, b)) return points(0, a) < points(0, b);
      return points(1, a) < points(1, b);
    });
    Real best = std::numeric_limits<Real>::infinity();
    for (Eigen::Index j : order) {
      // strictly lower f2 than every point with smaller-or-equal f1
      if (points(1, j) < best) {
        keep.push_back(j);
        best = points(1, j);
      }
    }
    std::sort(keep.begin(), keep.end());
  } else {
    for (Eigen::Index j = 0; j < k; ++j) {
      bool dominated = false;
      for (Eigen::Index q = 0; q < k && !dominated; ++q) {
        dominated = q != j && dominates(points.col(q), points.col(j));
      }
      if (!dominated) keep.push_back(j);
    }
  }
  ObjectiveSet out(points.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    out.col(static_cast<Eigen::Index>(c)) = points.col(keep[c]);
  }
  return out;
}

std::function<ReferenceFront(std::size_t)> front_from_pareto_set(
    std::function<DecisionVector(const DecisionVector&)> ps_point,
    std::function<ObjectiveVector(const DecisionVector&)> objectives,
    Eigen::Index m) {
  return [ps = std::move(ps_point), obj = std::move(objectives), m](std::size_t R) {
    std::vector<DecisionVector> params;
    if (m == 2) {
      for (std::size_t j = 0; j < R; ++j) {
        DecisionVector t(1);
        t[0] = R == 1 ? 0.0 : static_cast<Real>(j) / static_cast<Real>(R - 1);
        params.push_back(t);
      }
    } else {
      const auto side = std::max<std::size_t>(
          1, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<Real>(R)))));
      for (std::size_t a = 0; a < side; ++a) {
        for (std::size_t b = 0; b < side; ++b) {
          DecisionVector t(2);
          t[0] = side == 1 ? 0.0 : static_cast<Real>(a) / static_cast<Real>(side - 1);
          t[1] = side == 1 ? 0.0 : static_cast<Real>(b) / static_cast<Real>(side - 1);
          params.push_back(t);
        }
      }
    }
    ObjectiveSet raw(m, static_cast<Eigen::Index>(params.size()));
    for (std::size_t j = 0; j < params.size(); ++j) {
      raw.col(static_cast<Eigen::Index>(j)) = obj(ps(params[j]));
    }
    return ReferenceFront{nondominated_columns(raw)};
  };
}

}  // namespace detail

namespace problems {

ProblemDefinition sch() {
  ProblemDefinition p;
  p.name = "SCH";
  p.n = 1;
  p.m = 2;
  p.bounds = Bounds::uniform(1, -10.0, 10.0);
  p.objectives = [](const DecisionVector& x) {
    ObjectiveVector f(2);
    f << x[0] * x[0], (x[0] - 2.0) * (x[0] - 2.0);
    return f;
  };
  // f1 = t^2, f2 = (t - 2)^2 for t in [0, 2]
  p.front_sampler = [](std::size_t R) {
    ReferenceFront front;
    front.points.resize(2, static_cast<Eigen::Index>(R));
    for (std::size_t j = 0; j < R; ++j) {
      const Real t = R == 1 ? 0.0 : 2.0 * static_cast<Real>(j) / static_cast<Real>(R - 1);
      front.points(0, static_cast<Eigen::Index>(j)) = t * t;
      front.points(1, static_cast<Eigen::Index>(j)) = (t - 2.0) * (t - 2.0);
    }
    return front;
  };
  p.pareto_set_point = [](const DecisionVector& t) {
    DecisionVector x(1);
    x[0] = 2.0 * t[0];
    return x;
  };
  p.metric_reference = ObjectiveVector::Constant(2, 5.0);
  return p;
}

ProblemDefinition zdt1(Eigen::Index n) {
  if (n < 2) throw ContractViolation("ZDT1 needs n >= 2");
  ProblemDefinition p;
  p.name = "ZDT1";
  p.n = n;
  p.m = 2;
  p.bounds = Bounds::uniform(n, 0.0, 1.0);
  p.objectives = [n](const DecisionVector& x) {
    const Real g = 1.0 + 9.0 * x.tail(n - 1).sum() / static_cast<Real>(n - 1);
    ObjectiveVector f(2);
    f << x[0], g * (1.0 - std::sqrt(x[0] / g));
    return f;
  };
  p.front_sampler = [](std::size_t R) {
    ReferenceFront front;
    front.points.resize(2, static_cast<Eigen::Index>(R));
    for (std::size_t j = 0; j < R; ++j) {
      const Real t = R == 1 ? 0.0 : static_cast<Real>(j) / static_cast<Real>(R - 1);
      front.points(0, static_cast<Eigen::Index>(j)) = t;
      front.points(1, static_cast<Eigen::Index>(j)) = 1.0 - std::sqrt(t);
    }
    return front;
  };
  p.pareto_set_point = [n](const DecisionVector& t) {
    DecisionVector x = DecisionVector::Zero(n);
    x[0] = t[0];
    return x;
  };
  p.metric_reference = ObjectiveVector::Constant(2, 2.0);
  return p;
}

}  // namespace problems

std::vector<std::string> problem_names() {
  std::vector<std::string> names{"SCH", "ZDT1"};
  for (int i = 1; i <= 6; ++i) names.push_back("GLT" + std::to_string(i));
  for (int i = 1; i <= 9; ++i) names.push_back("WFG" + std::to_string(i));
  return names;
}

Eigen::Index default_dimension(std::string_view name) {
  if (name == "SCH") return 1;
  if (name.starts_with("WFG")) return 30;
  return 10;
}

ProblemDefinition make_problem(std::string_view name, std::optional<Eigen::Index> n) {
  const Eigen::Index dim = n.value_or(default_dimension(name));
  if (name == "SCH") {
    if (dim != 1) throw ContractViolation("SCH is one-dimensional");
    return problems::sch();
  }
  if (name == "ZDT1") return problems::zdt1(dim);
  auto suffix = [&](std::string_view prefix, int count) -> int {
    if (!name.starts_with(prefix) || name.size() != prefix.size() + 1) return 0;
    const int idx = name.back() - '0';
    return idx >= 1 && idx <= count ? idx : 0;
  };
  if (int i = suffix("GLT", 6)) return problems::glt(i, dim);
  if (int i = suffix("WFG", 9)) return problems::wfg(i, dim);

  std::string valid;
  for (const auto& known : problem_names()) {
    valid += valid.empty() ? known : ", " + known;
  }
  throw UnknownProblem("unknown problem '" + std::string(name) + "'; valid names: " + valid);
}

}  // namespace ocea
