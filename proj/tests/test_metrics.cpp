#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <splr/metrics.hpp>
#include <splr/wilcoxon.hpp>

#include "support/oracles.hpp"

using Catch::Matchers::ContainsSubstring;

namespace {

splr::Partition partition_of(std::vector<int> assignments, int clusters) {
  splr::Partition p;
  p.assignments = std::move(assignments);
  p.clusters = clusters;
  return p;
}

splr::LabelVector labels_of(const std::vector<int>& ids) {
  return splr::LabelVector(oracles::label_names(ids));
}

}  // namespace

TEST_CASE("accuracy uses the best cluster-to-class matching") {
  const splr::Partition pred = partition_of({0, 0, 1, 1}, 2);
  const splr::LabelVector truth = labels_of({0, 1, 1, 1});
  CHECK(splr::acc(pred, truth) == Catch::Approx(0.75).margin(1e-15));
}

TEST_CASE("accuracy is invariant to cluster relabeling") {
  const splr::LabelVector truth = labels_of({0, 0, 1, 1, 2, 2});
  const splr::Partition a = partition_of({0, 0, 1, 1, 2, 2}, 3);
  const splr::Partition b = partition_of({2, 2, 0, 0, 1, 1}, 3);
  CHECK(splr::acc(a, truth) == 1.0);
  CHECK(splr::acc(b, truth) == 1.0);
}

TEST_CASE("accuracy matches brute-force matching on random cases") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    const int c = 2 + static_cast<int>(rng() % 5);  // up to 6 clusters
    const int n = 20 + static_cast<int>(rng() % 20);
    std::vector<int> pred(n), truth(n);
    for (int i = 0; i < n; ++i) {
      pred[i] = static_cast<int>(rng() % static_cast<std::uint64_t>(c));
      truth[i] = static_cast<int>(rng() % static_cast<std::uint64_t>(c));
    }
    // Ensure every id appears so cluster counts match the declared c.
    for (int v = 0; v < c; ++v) {
      pred[v] = v;
      truth[n - 1 - v] = v;
    }
    const splr::Partition p = partition_of(pred, c);
    const splr::LabelVector t = labels_of(truth);

    // Brute force: maximize agreement over all cluster->class bijections.
    std::vector<std::vector<long long>> overlap(static_cast<std::size_t>(c),
                                                std::vector<long long>(static_cast<std::size_t>(c), 0));
    for (int i = 0; i < n; ++i)
      ++overlap[static_cast<std::size_t>(pred[i])][static_cast<std::size_t>(t.labels()[i])];
    std::vector<std::vector<long long>> cost = overlap;
    for (auto& row : cost)
      for (auto& cell : row) cell = -cell;
    const long long best_agreement = -oracles::brute_force_assignment_cost(cost);
    CHECK(splr::acc(p, t) ==
          Catch::Approx(static_cast<double>(best_agreement) / n).margin(1e-12));
  }
}

TEST_CASE("matching pads when cluster and class counts differ") {
  const splr::Partition pred = partition_of({0, 1, 2, 3}, 4);
  const splr::LabelVector truth = labels_of({0, 0, 1, 1});
  const splr::LabelMatching matching = splr::match_labels(pred, truth);
  REQUIRE(matching.mapping.size() == 4);
  int real = 0;
  for (int m : matching.mapping)
    if (m >= 0) ++real;
  CHECK(real == 2);  // only two classes exist to be matched
  CHECK(splr::acc(pred, truth) == Catch::Approx(0.5).margin(1e-15));
}

TEST_CASE("identical partitions have unit normalized mutual information") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 12 + static_cast<int>(rng() % 20);
    std::vector<int> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = static_cast<int>(rng() % 3);
    ids[0] = 0;
    ids[1] = 1;
    ids[2] = 2;
    const splr::Partition pred = partition_of(ids, 3);
    CHECK(splr::nmi(pred, labels_of(ids)) == Catch::Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("independent partitions have zero normalized mutual information") {
  // Joint distribution exactly uniform over the 2x3 grid: independent.
  std::vector<int> pred, truth;
  for (int rep = 0; rep < 5; ++rep)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 3; ++b) {
        pred.push_back(a);
        truth.push_back(b);
      }
  CHECK(splr::nmi(partition_of(pred, 2), labels_of(truth)) ==
        Catch::Approx(0.0).margin(1e-12));
  CHECK(splr::nmi(partition_of({0, 0, 1, 1}, 2), labels_of({0, 1, 0, 1})) ==
        Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("normalized mutual information stays within [0, 1]") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 10 + static_cast<int>(rng() % 30);
    std::vector<int> pred(n), truth(n);
    for (int i = 0; i < n; ++i) {
      pred[i] = static_cast<int>(rng() % 4);
      truth[i] = static_cast<int>(rng() % 3);
    }
    for (int v = 0; v < 4; ++v) pred[v] = v;
    for (int v = 0; v < 3; ++v) truth[n - 1 - v] = v;
    const double value = splr::nmi(partition_of(pred, 4), labels_of(truth));
    CHECK(value >= 0.0);
    CHECK(value <= 1.0);
  }
}

TEST_CASE("metric inputs must pair up") {
  const splr::Partition pred = partition_of({0, 1}, 2);
  const splr::LabelVector truth = labels_of({0, 1, 0});
  REQUIRE_THROWS_AS(splr::acc(pred, truth), std::invalid_argument);
  REQUIRE_THROWS_AS(splr::nmi(pred, truth), std::invalid_argument);
}

TEST_CASE("signed-rank test: all-positive differences at n = 8") {
  std::vector<double> a(8), b(8);
  for (int i = 0; i < 8; ++i) {
    b[i] = i;
    a[i] = i + 1.0;  // uniformly better by 1
  }
  const splr::WilcoxonResult greater =
      splr::wilcoxon_signed_rank(a, b, splr::Alternative::greater);
  CHECK(greater.exact);
  CHECK(greater.statistic == Catch::Approx(36.0));
  CHECK(greater.p_value == Catch::Approx(1.0 / 256.0).margin(1e-15));
  const splr::WilcoxonResult less = splr::wilcoxon_signed_rank(a, b, splr::Alternative::less);
  CHECK(less.p_value == Catch::Approx(1.0).margin(1e-15));
}

TEST_CASE("signed-rank test: tied magnitudes use average ranks") {
  // Differences +1, +1, -1: shared rank 2 each, statistic 4, and 4 of the 8
  // sign patterns reach 4 or more.
  const std::vector<double> a = {2, 2, 0};
  const std::vector<double> b = {1, 1, 1};
  const splr::WilcoxonResult result =
      splr::wilcoxon_signed_rank(a, b, splr::Alternative::greater);
  CHECK(result.statistic == Catch::Approx(4.0));
  CHECK(result.p_value == Catch::Approx(0.5).margin(1e-15));
}

TEST_CASE("signed-rank test matches exhaustive enumeration with ties") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 3 + rng() % 10;  // up to 12 pairs: exact branch
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = static_cast<double>(rng() % 6);
      b[i] = static_cast<double>(rng() % 6);
    }
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) any = any || a[i] != b[i];
    if (!any) a[0] += 1.0;
    for (const bool greater : {true, false}) {
      const auto alt = greater ? splr::Alternative::greater : splr::Alternative::less;
      const splr::WilcoxonResult result = splr::wilcoxon_signed_rank(a, b, alt);
      const oracles::SignedRankOracle expected = oracles::exact_signed_rank(a, b, greater);
      CHECK(result.exact);
      CHECK(result.statistic == Catch::Approx(expected.statistic).margin(1e-12));
      CHECK(result.p_value == Catch::Approx(expected.p_value).margin(1e-12));
    }
  }
}

TEST_CASE("signed-rank test: zeros drop, all-zero errors, large n approximates") {
  const std::vector<double> a = {1, 2, 3, 4};
  const std::vector<double> mixed = {1, 2, 2, 3};  // two zero differences
  const splr::WilcoxonResult result =
      splr::wilcoxon_signed_rank(a, mixed, splr::Alternative::greater);
  CHECK(result.exact);
  CHECK(result.statistic == Catch::Approx(3.0));  // two positive diffs, ranks 1.5 each

  REQUIRE_THROWS_WITH(splr::wilcoxon_signed_rank(a, a, splr::Alternative::greater),
                      ContainsSubstring("all differences zero"));
  REQUIRE_THROWS_AS(splr::wilcoxon_signed_rank(a, {1.0}, splr::Alternative::greater),
                    std::invalid_argument);

  std::vector<double> big_a(50), big_b(50);
  std::mt19937_64 rng(37);
  for (int i = 0; i < 50; ++i) {
    big_b[i] = splr::uniform01(rng);
    big_a[i] = big_b[i] + 0.5 + splr::uniform01(rng);
  }
  const splr::WilcoxonResult approx =
      splr::wilcoxon_signed_rank(big_a, big_b, splr::Alternative::greater);
  CHECK_FALSE(approx.exact);
  CHECK(approx.p_value > 0.0);
  CHECK(approx.p_value < 1e-6);
  const splr::WilcoxonResult opposite =
      splr::wilcoxon_signed_rank(big_a, big_b, splr::Alternative::less);
  CHECK(opposite.p_value > 1.0 - 1e-6);
  CHECK(opposite.p_value <= 1.0);
}
