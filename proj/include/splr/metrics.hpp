#pragma once

#include "splr/clustering.hpp"
#include "splr/core.hpp"
#include "splr/data.hpp"
#include "splr/hungarian.hpp"

namespace splr {

namespace detail {

inline std::vector<std::vector<long long>> contingency(const std::vector<int>& pred,
                                                       int pred_count,
                                                       const std::vector<int>& truth,
                                                       int truth_count) {
  if (pred.size() != truth.size() || pred.empty())
    throw std::invalid_argument("contingency: need equal, nonempty labelings");
  std::vector<std::vector<long long>> table(
      static_cast<std::size_t>(pred_count),
      std::vector<long long>(static_cast<std::size_t>(truth_count), 0));
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i] < 0 || pred[i] >= pred_count || truth[i] < 0 || truth[i] >= truth_count)
      throw std::invalid_argument("contingency: label id out of range");
    ++table[static_cast<std::size_t>(pred[i])][static_cast<std::size_t>(truth[i])];
  }
  return table;
}

}  // namespace detail

struct LabelMatching {
  std::vector<int> mapping;  // cluster id -> class id, -1 when unmatched
  long long agreement = 0;   // samples explained by the best relabeling
};

/// Optimal one-to-one relabeling of predicted clusters onto true classes.
/// The contingency table is padded with zeros to square so cluster and class
/// counts may differ; clusters assigned to padding map to -1.
inline LabelMatching match_labels(const Partition& pred, const LabelVector& truth) {
  const auto table =
      detail::contingency(pred.assignments, pred.clusters, truth.labels(), truth.classes());
  const int side = std::max(pred.clusters, truth.classes());
  std::vector<std::vector<long long>> cost(
      static_cast<std::size_t>(side), std::vector<long long>(static_cast<std::size_t>(side), 0));
  for (int i = 0; i < pred.clusters; ++i)
    for (int j = 0; j < truth.classes(); ++j)
      cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          -table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];

  const auto assignment = min_cost_assignment(cost);
  LabelMatching result;
  result.mapping.resize(static_cast<std::size_t>(pred.clusters), -1);
  for (int i = 0; i < pred.clusters; ++i) {
    const int j = assignment[static_cast<std::size_t>(i)];
    if (j < truth.classes()) {
      result.mapping[static_cast<std::size_t>(i)] = j;
      result.agreement += table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return result;
}

/// Clustering accuracy: fraction of samples kept by the best relabeling.
inline double acc(const Partition& pred, const LabelVector& truth) {
  if (static_cast<Index>(pred.assignments.size()) != truth.size())
    throw std::invalid_argument("acc: label lengths differ");
  return static_cast<double>(match_labels(pred, truth).agreement) /
         static_cast<double>(truth.size());
}

/// Normalized mutual information with natural logarithms, normalized by the
/// geometric mean of the two entropies. A degenerate side (single cluster,
/// zero entropy) yields 0 by convention.
inline double nmi(const Partition& pred, const LabelVector& truth) {
  const auto table =
      detail::contingency(pred.assignments, pred.clusters, truth.labels(), truth.classes());
  const double n = static_cast<double>(pred.assignments.size());

  std::vector<double> pred_marginal(static_cast<std::size_t>(pred.clusters), 0.0);
  std::vector<double> truth_marginal(static_cast<std::size_t>(truth.classes()), 0.0);
  for (std::size_t i = 0; i < table.size(); ++i)
    for (std::size_t j = 0; j < table[i].size(); ++j) {
      pred_marginal[i] += static_cast<double>(table[i][j]);
      truth_marginal[j] += static_cast<double>(table[i][j]);
    }

  double mutual = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i)
    for (std::size_t j = 0; j < table[i].size(); ++j) {
      const double joint = static_cast<double>(table[i][j]);
      if (joint > 0.0)
        mutual += joint / n * std::log(n * joint / (pred_marginal[i] * truth_marginal[j]));
    }

  auto entropy = [n](const std::vector<double>& marginal) {
    double h = 0.0;
    for (double count : marginal)
      if (count > 0.0) h -= count / n * std::log(count / n);
    return h;
  };
  const double pred_entropy = entropy(pred_marginal);
  const double truth_entropy = entropy(truth_marginal);
  if (pred_entropy <= 0.0 || truth_entropy <= 0.0) return 0.0;
  return std::clamp(mutual / std::sqrt(pred_entropy * truth_entropy), 0.0, 1.0);
}

}  // namespace splr
