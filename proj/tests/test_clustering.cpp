#include <doctest.h>

#include <map>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ocea/clustering.hpp"

using namespace ocea;

namespace {
Eigen::VectorXd v(std::initializer_list<double> xs) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) out[i++] = x;
  return out;
}
Solution sol(SolutionId id, Eigen::VectorXd x) { return Solution{id, std::move(x), {}, {}}; }

void check_exact_means(const ClusterSet& cs, const std::map<SolutionId, DecisionVector>& live) {
  std::size_t total = 0;
  std::set<SolutionId> seen;
  for (const auto& c : cs.clusters()) {
    REQUIRE(c.counter == c.members.size());
    DecisionVector mean = DecisionVector::Zero(c.centroid.size());
    for (auto id : c.members) {
      REQUIRE(seen.insert(id).second);
      mean += live.at(id);
    }
    mean /= static_cast<double>(c.members.size());
    REQUIRE((mean - c.centroid).cwiseAbs().maxCoeff() <= 1e-9);
    total += c.counter;
  }
  REQUIRE(total == live.size());
}
}  // namespace

TEST_CASE("init_singletons") {
  std::vector<Solution> pop{sol(0, v({0.2, 0.8})), sol(1, v({0.1, 0.1})), sol(2, v({0.5, 0.5}))};
  const auto cs = ClusterSet::init_singletons(pop, 7);
  REQUIRE(cs.size() == 3);
  for (const auto& c : cs.clusters()) CHECK(c.counter == 1);
  CHECK(cs[0].centroid == v({0.2, 0.8}));
  CHECK(*cs.cluster_of(2) == 2);
  CHECK_THROWS_AS(ClusterSet::init_singletons({}, 7), ContractViolation);

  std::vector<Solution> big;
  for (SolutionId i = 0; i < 100; ++i) big.push_back(sol(i, v({double(i)})));
  CHECK(ClusterSet::init_singletons(big, 7).size() == 100);
}

TEST_CASE("remove_member examples") {
  // {(0,0), (2,2)} -> remove (2,2)
  std::vector<Solution> pop{sol(0, v({0, 0})), sol(1, v({2, 2}))};
  auto cs = ClusterSet::init_singletons(pop, 1);
  cs.merge(0, 1);
  REQUIRE(cs[0].centroid == v({1, 1}));
  cs.remove_member(pop[1]);
  CHECK(cs[0].counter == 1);
  CHECK(cs[0].centroid == v({0, 0}));

  cs.remove_member(pop[0]);
  CHECK(cs.size() == 0);

  std::vector<Solution> three{sol(0, v({0})), sol(1, v({1})), sol(2, v({2}))};
  auto c3 = ClusterSet::init_singletons(three, 1);
  c3.merge(0, 1);
  c3.merge(0, 1);
  REQUIRE(c3[0].centroid == v({1}));
  c3.remove_member(three[0]);
  CHECK(c3[0].counter == 2);
  CHECK(c3[0].centroid[0] == doctest::Approx(1.5));

  CHECK_THROWS_AS(c3.remove_member(sol(99, v({0}))), ContractViolation);
}

TEST_CASE("merge is a weighted mean") {
  std::vector<Solution> pop{sol(0, v({0, 0})), sol(1, v({0, 0})), sol(2, v({3, 3}))};
  auto cs = ClusterSet::init_singletons(pop, 3);
  cs.merge(0, 1);
  cs.merge(0, 1);
  CHECK(cs[0].centroid == v({1, 1}));
  CHECK(cs[0].counter == 3);
  CHECK(cs[0].members.size() == 3);
}

TEST_CASE("insert at the cap merges the closest existing pair") {
  std::vector<Solution> pop{sol(0, v({0, 0})), sol(1, v({0.1, 0})), sol(2, v({5, 5}))};
  auto cs = ClusterSet::init_singletons(pop, 3);
  cs.insert_as_new_cluster(sol(3, v({100, 100})));
  REQUIRE(cs.size() == 3);
  CHECK(cs[0].counter == 2);
  CHECK(cs[0].centroid == v({0.05, 0}));
  CHECK(cs[2].centroid == v({100, 100}));
  CHECK(*cs.cluster_of(3) == 2);
}

TEST_CASE("k_max = 1 keeps the running mean") {
  std::vector<Solution> pop{sol(0, v({1.0}))};
  auto cs = ClusterSet::init_singletons(pop, 1);
  std::map<SolutionId, DecisionVector> live{{0, v({1.0})}};
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(-5, 5);
  for (SolutionId id = 1; id < 200; ++id) {
    const auto s = sol(id, v({u(gen)}));
    cs.insert_as_new_cluster(s);
    live[id] = s.x;
    if (id % 3 == 0) {
      const auto victim = live.begin();
      cs.remove_member(sol(victim->first, victim->second));
      live.erase(victim);
    }
    REQUIRE(cs.size() == 1);
  }
  check_exact_means(cs, live);
}

TEST_CASE("closest_pair is the lexicographically first argmin") {
  std::mt19937_64 gen(5);
  std::uniform_int_distribution<int> cell(0, 4);
  for (int t = 0; t < 300; ++t) {
    std::vector<Solution> pop;
    for (SolutionId i = 0; i < 8; ++i) pop.push_back(sol(i, v({double(cell(gen)), double(cell(gen))})));
    const auto cs = ClusterSet::init_singletons(pop, 8);
    double best = 1e300;
    std::pair<std::size_t, std::size_t> expected;
    for (std::size_t a = 0; a < 8; ++a)
      for (std::size_t b = a + 1; b < 8; ++b) {
        const double d = (pop[a].x - pop[b].x).norm();
        if (d < best) {
          best = d;
          expected = {a, b};
        }
      }
    CHECK(cs.closest_pair() == expected);
  }
}

TEST_CASE("exact-mean and partition invariants under random interleavings") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Solution> pop;
  std::map<SolutionId, DecisionVector> live;
  for (SolutionId i = 0; i < 30; ++i) {
    DecisionVector x(4);
    for (int d = 0; d < 4; ++d) x[d] = u(gen);
    pop.push_back(sol(i, x));
    live[i] = x;
  }
  auto cs = ClusterSet::init_singletons(pop, 5);
  SolutionId next = 30;
  std::size_t ceiling = cs.size();
  for (int op = 0; op < 5000; ++op) {
    if (live.size() > 2 && u(gen) < 0.5) {
      auto it = live.begin();
      std::advance(it, static_cast<long>(u(gen) * static_cast<double>(live.size())));
      cs.remove_member(sol(it->first, it->second));
      live.erase(it);
    } else {
      DecisionVector x(4);
      for (int d = 0; d < 4; ++d) x[d] = u(gen);
      cs.insert_as_new_cluster(sol(next, x));
      live[next++] = x;
    }
    // Above the cap the count can only shrink; once at the cap it stays there.
    REQUIRE(cs.size() <= ceiling);
    ceiling = std::max<std::size_t>(5, cs.size());
  }
  check_exact_means(cs, live);
}

TEST_CASE("labels stay stable across deletions") {
  std::vector<Solution> pop{sol(0, v({0})), sol(1, v({5})), sol(2, v({9}))};
  auto cs = ClusterSet::init_singletons(pop, 7);
  const auto label = cs[2].label;
  cs.remove_member(pop[0]);
  CHECK(cs[1].label == label);
}

TEST_CASE("addc reference examples") {
  const std::vector<DecisionVector> one{v({0.3, 0.7})};
  const auto a = addc_reference(one, 3);
  REQUIRE(a.size() == 1);
  CHECK(a[0].centroid == v({0.3, 0.7}));

  // Hand trace of {0, 0, 10, 10}, k_max = 2, eps = 0: the winner update makes
  // (0, c=1), spawn (0, c=0); 10 wins the first cluster -> (5, c=2), merge
  // with the empty spawn and respawn at 10; the last 10 fills (10, c=1), the
  // pair merges into (20/3, c=3) and a fresh (10, c=0) is spawned.
  const std::vector<DecisionVector> stream{v({0}), v({0}), v({10}), v({10})};
  const auto b = addc_reference(stream, 2, 0.0);
  REQUIRE(b.size() == 2);
  CHECK(b[0].centroid[0] == doctest::Approx(20.0 / 3.0));
  CHECK(b[0].counter == 3);
  CHECK(b[1].centroid[0] == doctest::Approx(10.0));
  CHECK(b[1].counter == 0);

  // Dropping zero-count clusters leaves only the populated one.
  CHECK(addc_reference(stream, 2, 0.5).size() == 1);

  const std::vector<DecisionVector> many{v({3}), v({-1}), v({8}), v({2}), v({5})};
  CHECK(addc_reference(many, 1).size() == 1);
}

TEST_CASE("addc separates well spaced groups") {
  std::vector<DecisionVector> stream;
  std::mt19937_64 gen(7);
  std::normal_distribution<double> noise(0.0, 0.1);
  for (int i = 0; i < 60; ++i) stream.push_back(v({(i % 3) * 10.0 + noise(gen)}));
  const auto out = addc_reference(stream, 4, 1.0);
  std::vector<double> centers;
  for (const auto& c : out) centers.push_back(c.centroid[0]);
  std::sort(centers.begin(), centers.end());
  REQUIRE(centers.size() == 3);
  CHECK(centers[0] == doctest::Approx(0.0).epsilon(0.5));
  CHECK(centers[1] == doctest::Approx(10.0).epsilon(0.05));
  CHECK(centers[2] == doctest::Approx(20.0).epsilon(0.05));
}

TEST_CASE("mean silhouette hand value") {
  Eigen::MatrixXd pts(1, 4);
  pts << 0, 1, 10, 11;
  const std::vector<std::size_t> labels{0, 0, 1, 1};
  const double expected = ((1 - 1 / 10.5) + (1 - 1 / 9.5)) / 2.0;
  CHECK(mean_silhouette(pts, labels) == doctest::Approx(expected));
}

TEST_CASE("cluster snapshot records") {
  std::vector<Solution> pop{sol(0, v({0.5, 0.25})), sol(1, v({1, 1}))};
  const auto cs = ClusterSet::init_singletons(pop, 2);
  std::ostringstream out;
  write_cluster_snapshot(out, cs, 4);
  std::istringstream in(out.str());
  std::string line;
  std::vector<nlohmann::json> rows;
  while (std::getline(in, line)) rows.push_back(nlohmann::json::parse(line));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0]["generation"] == 4);
  CHECK(rows[0]["counter"] == 1);
  CHECK(rows[0]["centroid"][1].get<double>() == 0.25);
  CHECK(rows[1]["members"][0] == 1);
}
