// Test-side helpers: random inputs and brute-force oracles that share no code
// with the library under test.
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

namespace support {

using Points = Eigen::MatrixXd;  // one point per column

/// Random points on a coarse grid so that ties and duplicates occur.
inline Points random_points(std::mt19937_64& gen, int m, int k, int grid = 10) {
  std::uniform_int_distribution<int> cell(0, grid);
  Points p(m, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < m; ++i) p(i, j) = static_cast<double>(cell(gen)) / grid;
  return p;
}

inline bool brute_dominates(const Points& p, int a, int b) {
  bool strict = false;
  for (int i = 0; i < p.rows(); ++i) {
    if (p(i, a) > p(i, b)) return false;
    if (p(i, a) < p(i, b)) strict = true;
  }
  return strict;
}

/// Repeatedly strips the non-dominated subset.
inline std::vector<std::vector<std::size_t>> peel(const Points& p) {
  std::vector<int> left(static_cast<std::size_t>(p.cols()));
  for (int j = 0; j < p.cols(); ++j) left[static_cast<std::size_t>(j)] = j;
  std::vector<std::vector<std::size_t>> fronts;
  while (!left.empty()) {
    std::vector<std::size_t> front;
    std::vector<int> rest;
    for (int a : left) {
      bool dominated = false;
      for (int b : left) dominated = dominated || brute_dominates(p, b, a);
      if (dominated) rest.push_back(a);
      else front.push_back(static_cast<std::size_t>(a));
    }
    fronts.push_back(front);
    left = rest;
  }
  return fronts;
}

/// Exact HV on small sets by inclusion over the grid of distinct coordinates.
inline double grid_hypervolume(const Points& p, const Eigen::VectorXd& r) {
  const int m = static_cast<int>(p.rows());
  std::vector<std::vector<double>> axes(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    auto& a = axes[static_cast<std::size_t>(i)];
    for (int j = 0; j < p.cols(); ++j)
      if (p(i, j) < r[i]) a.push_back(p(i, j));
    a.push_back(r[i]);
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  double total = 0.0;
  std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
  while (true) {
    bool valid = true;
    double vol = 1.0;
    Eigen::VectorXd corner(m);
    for (int i = 0; i < m; ++i) {
      const auto& a = axes[static_cast<std::size_t>(i)];
      const std::size_t c = idx[static_cast<std::size_t>(i)];
      if (c + 1 >= a.size()) { valid = false; break; }
      corner[i] = a[c];
      vol *= a[c + 1] - a[c];
    }
    if (valid) {
      bool covered = false;
      for (int j = 0; j < p.cols() && !covered; ++j)
        covered = (p.col(j).array() <= corner.array()).all() && (p.col(j).array() < r.array()).all();
      if (covered) total += vol;
    }
    int d = 0;
    while (d < m) {
      auto& c = idx[static_cast<std::size_t>(d)];
      if (++c + 1 < axes[static_cast<std::size_t>(d)].size()) break;
      c = 0;
      ++d;
    }
    if (d == m) break;
  }
  return total;
}

}  // namespace support
