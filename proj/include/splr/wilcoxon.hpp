#pragma once

#include <numbers>
#include <vector>

#include "splr/core.hpp"

namespace splr {

enum class Alternative { greater, less };

struct WilcoxonResult {
  double statistic = 0.0;  // sum of ranks of the positive differences
  double p_value = 1.0;
  bool exact = false;  // true when the null was enumerated rather than approximated
};

/// One-sided Wilcoxon signed-rank test on paired samples. Zero differences
/// are dropped; absolute differences get average ranks on ties. Up to 12
/// nonzero differences the null distribution is enumerated exactly (all 2^n
/// sign patterns); beyond that a normal approximation with tie-corrected
/// variance is used, without continuity correction.
inline WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a,
                                           const std::vector<double>& b,
                                           Alternative alternative) {
  if (a.size() != b.size())
    throw std::invalid_argument("wilcoxon: paired samples must have equal length");
  std::vector<double> diffs;
  diffs.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (d != 0.0) diffs.push_back(d);
  }
  if (diffs.empty()) throw std::invalid_argument("wilcoxon: all differences zero");

  const std::size_t n = diffs.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return std::abs(diffs[x]) < std::abs(diffs[y]);
  });

  // Average ranks across runs of tied absolute differences. Ranks are
  // multiples of 1/2, so later sums and comparisons are exact.
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && std::abs(diffs[order[j]]) == std::abs(diffs[order[i]])) ++j;
    const double average = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t t = i; t < j; ++t) ranks[order[t]] = average;
    i = j;
  }

  WilcoxonResult result;
  for (std::size_t i = 0; i < n; ++i)
    if (diffs[i] > 0.0) result.statistic += ranks[i];

  if (n <= 12) {
    result.exact = true;
    long long hits = 0;
    const std::size_t patterns = std::size_t{1} << n;
    for (std::size_t mask = 0; mask < patterns; ++mask) {
      double w = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::size_t{1} << i)) w += ranks[i];
      if (alternative == Alternative::greater ? w >= result.statistic
                                              : w <= result.statistic)
        ++hits;
    }
    result.p_value = static_cast<double>(hits) / static_cast<double>(patterns);
    return result;
  }

  double mean = 0.0, variance = 0.0;
  for (double r : ranks) {
    mean += r / 2.0;
    variance += r * r / 4.0;  // equals the textbook tie-corrected variance
  }
  const double z = (result.statistic - mean) / std::sqrt(variance);
  result.p_value = alternative == Alternative::greater
                       ? 0.5 * std::erfc(z / std::numbers::sqrt2)
                       : 0.5 * std::erfc(-z / std::numbers::sqrt2);
  return result;
}

}  // namespace splr
