#pragma once

#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "splr/clustering.hpp"
#include "splr/core.hpp"
#include "splr/data.hpp"
#include "splr/metrics.hpp"

namespace splr {

enum class Clusterer { kmeans, pam };

inline Clusterer clusterer_from_name(const std::string& name) {
  if (name == "kmeans") return Clusterer::kmeans;
  if (name == "pam") return Clusterer::pam;
  throw config_error("unknown clusterer '" + name + "' (expected kmeans or pam)");
}

inline const char* to_name(Clusterer clusterer) {
  return clusterer == Clusterer::kmeans ? "kmeans" : "pam";
}

/// Accuracy and NMI aggregated over clustering restarts. Means use the
/// population standard deviation so a single restart reports 0 spread.
struct MetricSummary {
  double acc_mean = 0.0, acc_std = 0.0;
  double nmi_mean = 0.0, nmi_std = 0.0;
  std::vector<double> acc_runs, nmi_runs;  // per-restart values, restart order
};

namespace detail {

inline void mean_and_std(const std::vector<double>& values, double& mean, double& std_dev) {
  mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double variance = 0.0;
  for (double v : values) variance += (v - mean) * (v - mean);
  std_dev = std::sqrt(variance / static_cast<double>(values.size()));
}

}  // namespace detail

/// Cluster the selected feature columns into as many groups as there are
/// true classes, repeating with derived seeds (seed + restart index), and
/// score every restart against the labels.
inline MetricSummary evaluate_subset(const DataMatrix& data, const std::vector<Index>& features,
                                     const LabelVector& labels, Clusterer clusterer,
                                     int restarts, std::uint64_t seed) {
  check_pairing(data, labels);
  if (restarts < 1) throw config_error("restarts must be >= 1");
  if (features.empty()) throw std::invalid_argument("evaluate_subset: empty feature set");
  std::set<Index> unique(features.begin(), features.end());
  if (unique.size() != features.size())
    throw std::invalid_argument("evaluate_subset: duplicate feature indices");
  for (Index j : features)
    if (j < 0 || j >= data.features())
      throw std::invalid_argument("evaluate_subset: feature index " + std::to_string(j) +
                                  " out of range");

  Matrix sub(data.samples(), static_cast<Index>(features.size()));
  for (std::size_t c = 0; c < features.size(); ++c)
    sub.col(static_cast<Index>(c)) = data.values().col(features[c]);

  MetricSummary summary;
  for (int r = 0; r < restarts; ++r) {
    const std::uint64_t run_seed = seed + static_cast<std::uint64_t>(r);
    const Partition partition = clusterer == Clusterer::kmeans
                                    ? kmeans(sub, labels.classes(), run_seed)
                                    : pam(sub, labels.classes(), run_seed);
    summary.acc_runs.push_back(acc(partition, labels));
    summary.nmi_runs.push_back(nmi(partition, labels));
  }
  detail::mean_and_std(summary.acc_runs, summary.acc_mean, summary.acc_std);
  detail::mean_and_std(summary.nmi_runs, summary.nmi_mean, summary.nmi_std);
  return summary;
}

/// Benchmark-table style "62.17±0.97": percentages, two decimals.
inline std::string format_mean_std(double mean, double std_dev) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.2f±%.2f", mean * 100.0, std_dev * 100.0);
  return buffer;
}

}  // namespace splr
