#include <doctest.h>

#include <cmath>
#include <random>

#include "ocea/selection.hpp"
#include "support.hpp"

using namespace ocea;

namespace {
ObjectiveSet cols(std::initializer_list<std::initializer_list<double>> pts) {
  const auto m = static_cast<Eigen::Index>(pts.begin()->size());
  ObjectiveSet out(m, static_cast<Eigen::Index>(pts.size()));
  Eigen::Index j = 0;
  for (const auto& p : pts) {
    Eigen::Index i = 0;
    for (double x : p) out(i++, j) = x;
    ++j;
  }
  return out;
}
ObjectiveVector r2(double a, double b) { return (ObjectiveVector(2) << a, b).finished(); }
}  // namespace

TEST_CASE("sorting examples") {
  CHECK(fast_nondominated_sort(cols({{1, 1}})).levels() == 1);
  const auto p = fast_nondominated_sort(cols({{1, 1}, {2, 2}, {0, 3}}));
  REQUIRE(p.levels() == 2);
  CHECK(p.fronts[0] == std::vector<std::size_t>{0, 2});
  CHECK(p.fronts[1] == std::vector<std::size_t>{1});
  CHECK(p.dominated_by == std::vector<std::size_t>{0, 1, 0});
  CHECK(fast_nondominated_sort(cols({{0, 3}, {1, 2}, {2, 1}, {3, 0}})).levels() == 1);
}

TEST_CASE("sorting matches brute-force peeling") {
  std::mt19937_64 gen(1);
  for (int t = 0; t < 300; ++t) {
    const int m = 2 + t % 2;
    const auto pts = support::random_points(gen, m, 1 + t % 50, 6);
    const auto got = fast_nondominated_sort(pts);
    REQUIRE(got.fronts == support::peel(pts));
    // Each later front is dominated by something in the previous one.
    for (std::size_t l = 1; l < got.fronts.size(); ++l)
      for (auto j : got.fronts[l]) {
        bool covered = false;
        for (auto i : got.fronts[l - 1]) covered = covered || dominates(pts.col(i), pts.col(j));
        REQUIRE(covered);
      }
  }
}

TEST_CASE("dominance_count examples") {
  CHECK(dominance_count(r2(2, 2), cols({{1, 1}, {0, 3}, {2, 2}})) == 1);
  CHECK(dominance_count(r2(0, 3), cols({{1, 1}, {0, 3}, {2, 2}})) == 0);
  CHECK(dominance_count(r2(5, 5), cols({{1, 1}, {2, 2}})) == 2);
}

TEST_CASE("hypervolume examples") {
  CHECK(hypervolume(cols({{1, 2}, {2, 1}}), r2(3, 3)) == 3.0);
  CHECK(hypervolume(cols({{1, 1}}), r2(2, 2)) == 1.0);
  CHECK(hypervolume(cols({{4, 1}}), r2(3, 3)) == 0.0);
  CHECK(clipped_points(cols({{4, 1}, {1, 1}}), r2(3, 3)) == 1);
  // Touching the reference on one coordinate adds no volume.
  CHECK(hypervolume(cols({{3, 1}}), r2(3, 3)) == 0.0);
  CHECK_THROWS_AS(hypervolume(ObjectiveSet::Zero(4, 2), ObjectiveVector::Ones(4)), UnsupportedError);
}

TEST_CASE("exact hypervolume matches a grid oracle") {
  std::mt19937_64 gen(2);
  for (int t = 0; t < 400; ++t) {
    const int m = 2 + t % 2;
    const auto pts = support::random_points(gen, m, 1 + t % 20, 8);
    const ObjectiveVector r = ObjectiveVector::Constant(m, 0.9);
    CHECK(hypervolume(pts, r) == doctest::Approx(support::grid_hypervolume(pts, r)).epsilon(1e-12));
  }
}

TEST_CASE("contribution examples") {
  const auto pts = cols({{1, 2}, {2, 1}});
  CHECK(hv_contribution(0, pts, r2(3, 3)) == 1.0);
  CHECK(hv_contribution(0, cols({{1, 1}}), r2(3, 3)) == 4.0);
  const auto dup = cols({{1, 2}, {1, 2}, {2, 1}});
  CHECK(hv_contribution(0, dup, r2(3, 3)) == 0.0);
  const auto all = hv_contributions(dup, r2(3, 3));
  CHECK(all[0] == 0.0);
  CHECK(all[1] == 0.0);
  CHECK(all[2] == 1.0);
}

TEST_CASE("batch contributions equal leave-one-out differences") {
  std::mt19937_64 gen(3);
  for (int t = 0; t < 300; ++t) {
    const int m = 2 + t % 2;
    auto pts = support::random_points(gen, m, 1 + t % 25, 10);
    if (t % 3 == 0) {
      // mutually non-dominated 2-D sets exercise the sorted path
      const auto front = fast_nondominated_sort(pts).fronts[0];
      ObjectiveSet f(m, static_cast<Eigen::Index>(front.size()));
      for (std::size_t j = 0; j < front.size(); ++j) f.col(static_cast<Eigen::Index>(j)) = pts.col(front[j]);
      pts = f;
    }
    const ObjectiveVector r = ObjectiveVector::Constant(m, 1.1);
    const auto got = hv_contributions(pts, r);
    const double total = support::grid_hypervolume(pts, r);
    double sum = 0.0;
    for (Eigen::Index j = 0; j < pts.cols(); ++j) {
      ObjectiveSet rest(m, pts.cols() - 1);
      for (Eigen::Index c = 0, k = 0; c < pts.cols(); ++c)
        if (c != j) rest.col(k++) = pts.col(c);
      const double expected = total - support::grid_hypervolume(rest, r);
      REQUIRE(got[static_cast<std::size_t>(j)] == doctest::Approx(expected).epsilon(1e-9).scale(1.0));
      REQUIRE(hv_contribution(static_cast<std::size_t>(j), pts, r) ==
              doctest::Approx(expected).epsilon(1e-9).scale(1.0));
      sum += got[static_cast<std::size_t>(j)];
    }
    CHECK(sum <= total + 1e-12);
  }
}

TEST_CASE("hypervolume monotonicity and permutation invariance") {
  std::mt19937_64 gen(4);
  for (int t = 0; t < 200; ++t) {
    const int m = 2 + t % 2;
    const auto pts = support::random_points(gen, m, 10, 10);
    const ObjectiveVector r = ObjectiveVector::Constant(m, 1.1);
    const double hv = hypervolume(pts, r);
    ObjectiveSet more(m, 11);
    more << pts, support::random_points(gen, m, 1, 10);
    CHECK(hypervolume(more, r) >= hv - 1e-12);
    ObjectiveSet shuffled = pts;
    for (Eigen::Index j = 0; j < shuffled.cols(); ++j) shuffled.col(j).swap(shuffled.col(shuffled.cols() - 1 - j));
    CHECK(hypervolume(shuffled, r) == doctest::Approx(hv).epsilon(1e-14));
  }
}

TEST_CASE("monte carlo examples") {
  RandomSource rng(1);
  const auto unit = mc_hypervolume(cols({{1, 1}}), r2(2, 2), 1'000'000, rng);
  CHECK(std::abs(unit.value - 1.0) <= std::max(3 * unit.std_error, 1e-12));
  const auto est = mc_hypervolume(cols({{1, 2}, {2, 1}}), r2(3, 3), 1'000'000, rng);
  CHECK(std::abs(est.value - 3.0) <= 3 * est.std_error);
  CHECK(mc_hypervolume(cols({{4, 4}}), r2(3, 3), 1000, rng).value == 0.0);
}

TEST_CASE("selection reference and crowding distance") {
  const auto f = cols({{0, 3}, {1, 1}, {3, 0}});
  CHECK(selection_reference(f) == r2(4, 4));
  CHECK(selection_reference(f, 0.5) == r2(3.5, 3.5));
  const auto cd = crowding_distance(cols({{0, 4}, {1, 2}, {2, 1}, {4, 0}}));
  CHECK(std::isinf(cd[0]));
  CHECK(std::isinf(cd[3]));
  CHECK(cd[1] == doctest::Approx(2.0 / 4 + 3.0 / 4));
  CHECK(cd[2] == doctest::Approx(3.0 / 4 + 2.0 / 4));
}
