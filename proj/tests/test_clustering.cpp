#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include <splr/clustering.hpp>
#include <splr/hungarian.hpp>

#include "support/oracles.hpp"

namespace {

/// Two well-separated square clouds of `per_cloud` points each.
splr::Matrix two_clouds(int per_cloud, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  splr::Matrix m(2 * per_cloud, 2);
  for (int i = 0; i < per_cloud; ++i) {
    m(i, 0) = splr::uniform01(rng);
    m(i, 1) = splr::uniform01(rng);
    m(per_cloud + i, 0) = 10.0 + splr::uniform01(rng);
    m(per_cloud + i, 1) = 10.0 + splr::uniform01(rng);
  }
  return m;
}

long long assignment_cost(const std::vector<std::vector<long long>>& cost,
                          const std::vector<int>& assignment) {
  long long total = 0;
  for (std::size_t i = 0; i < assignment.size(); ++i)
    total += cost[i][static_cast<std::size_t>(assignment[i])];
  return total;
}

}  // namespace

TEST_CASE("assignment solver finds the classic textbook optimum") {
  const std::vector<std::vector<long long>> cost = {{4, 1, 3}, {2, 0, 5}, {3, 2, 2}};
  const std::vector<int> assignment = splr::min_cost_assignment(cost);
  CHECK(assignment_cost(cost, assignment) == 5);
  const std::set<int> used(assignment.begin(), assignment.end());
  CHECK(used.size() == 3);  // a permutation
}

TEST_CASE("assignment solver matches brute force on random instances") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 5;  // up to 6x6
    std::vector<std::vector<long long>> cost(n, std::vector<long long>(n));
    for (auto& row : cost)
      for (auto& cell : row) cell = static_cast<long long>(rng() % 1000) - 200;
    const std::vector<int> assignment = splr::min_cost_assignment(cost);
    REQUIRE(assignment.size() == n);
    CHECK(assignment_cost(cost, assignment) == oracles::brute_force_assignment_cost(cost));
  }
}

TEST_CASE("assignment solver rejects ragged input") {
  REQUIRE_THROWS_AS(splr::min_cost_assignment({{1, 2}, {3}}), std::invalid_argument);
}

TEST_CASE("kmeans separates well-separated clouds perfectly") {
  const splr::Matrix data = two_clouds(15, 2);
  const splr::Partition p = splr::kmeans(data, 2, 0);
  REQUIRE(p.assignments.size() == 30);
  CHECK(p.clusters == 2);
  for (int i = 1; i < 15; ++i) CHECK(p.assignments[i] == p.assignments[0]);
  for (int i = 16; i < 30; ++i) CHECK(p.assignments[i] == p.assignments[15]);
  CHECK(p.assignments[0] != p.assignments[15]);
}

TEST_CASE("kmeans basics: ranges, determinism, degenerate cluster counts") {
  const splr::Matrix data = two_clouds(10, 3);
  SECTION("assignments stay in range") {
    const splr::Partition p = splr::kmeans(data, 5, 7);
    for (int a : p.assignments) {
      CHECK(a >= 0);
      CHECK(a < 5);
    }
  }
  SECTION("same seed, same partition; bad counts throw") {
    const splr::Partition a = splr::kmeans(data, 3, 9);
    const splr::Partition b = splr::kmeans(data, 3, 9);
    CHECK(a.assignments == b.assignments);
    REQUIRE_THROWS_AS(splr::kmeans(data, 0, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(splr::kmeans(data, 21, 0), std::invalid_argument);
  }
  SECTION("one cluster absorbs everything") {
    const splr::Partition p = splr::kmeans(data, 1, 4);
    for (int a : p.assignments) CHECK(a == 0);
  }
  SECTION("as many clusters as points puts every point alone") {
    const splr::Matrix tiny = two_clouds(3, 5);
    const splr::Partition p = splr::kmeans(tiny, 6, 11);
    const std::set<int> used(p.assignments.begin(), p.assignments.end());
    CHECK(used.size() == 6);
  }
}

TEST_CASE("kmeans never returns an empty cluster on duplicate-heavy data") {
  splr::Matrix data(8, 2);
  data << 1, 1, 1, 1, 1, 1, 1, 1, 5, 5, 5, 5, 5, 5, 9, 9;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const splr::Partition p = splr::kmeans(data, 3, seed);
    std::vector<int> counts(3, 0);
    for (int a : p.assignments) ++counts[static_cast<std::size_t>(a)];
    for (int c : counts) CHECK(c > 0);
  }
}

TEST_CASE("k-medoids separates the clouds and reports a non-increasing cost trace") {
  const splr::Matrix data = two_clouds(12, 6);
  const splr::PamResult result = splr::pam_detailed(data, 2, 1);
  for (int i = 1; i < 12; ++i) CHECK(result.partition.assignments[i] ==
                                     result.partition.assignments[0]);
  for (int i = 13; i < 24; ++i) CHECK(result.partition.assignments[i] ==
                                      result.partition.assignments[12]);
  CHECK(result.partition.assignments[0] != result.partition.assignments[12]);
  REQUIRE_FALSE(result.cost_trace.empty());
  for (std::size_t t = 1; t < result.cost_trace.size(); ++t)
    CHECK(result.cost_trace[t] <= result.cost_trace[t - 1] + 1e-12);
}

TEST_CASE("k-medoids basics") {
  const splr::Matrix data = two_clouds(8, 8);
  SECTION("deterministic for a fixed seed") {
    const splr::Partition a = splr::pam(data, 3, 5);
    const splr::Partition b = splr::pam(data, 3, 5);
    CHECK(a.assignments == b.assignments);
  }
  SECTION("cluster count equals the request") {
    const splr::Partition p = splr::pam(data, 4, 2);
    const std::set<int> used(p.assignments.begin(), p.assignments.end());
    CHECK(static_cast<int>(used.size()) == 4);
    CHECK(p.clusters == 4);
  }
  SECTION("every point its own medoid drives the cost to zero") {
    const splr::Matrix tiny = two_clouds(2, 12);
    const splr::PamResult result = splr::pam_detailed(tiny, 4, 3);
    CHECK(result.cost_trace.back() == Catch::Approx(0.0).margin(1e-12));
  }
  SECTION("invalid cluster counts throw") {
    REQUIRE_THROWS_AS(splr::pam(data, 0, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(splr::pam(data, 17, 0), std::invalid_argument);
  }
}

TEST_CASE("random labelings keep medoid costs above the optimum") {
  // Sanity property: the swap phase should never settle on something worse
  // than the build phase started with.
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    splr::Matrix data(12, 3);
    for (splr::Index r = 0; r < data.rows(); ++r)
      for (splr::Index c = 0; c < data.cols(); ++c) data(r, c) = splr::uniform01(rng);
    const splr::PamResult result = splr::pam_detailed(data, 3, trial);
    CHECK(result.cost_trace.back() <= result.cost_trace.front() + 1e-12);
  }
}
