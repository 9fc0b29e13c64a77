#pragma once

#include <limits>
#include <vector>

#include "splr/core.hpp"

namespace splr {

/// Minimum-cost perfect matching on a square integer cost matrix via the
/// Hungarian algorithm with row/column potentials, O(n^3). Integer costs keep
/// the optimum exact, which matters because tests compare against brute-force
/// enumeration. Returns the column assigned to each row.
inline std::vector<int> min_cost_assignment(const std::vector<std::vector<long long>>& cost) {
  const int n = static_cast<int>(cost.size());
  for (const auto& row : cost)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("assignment cost matrix must be square");
  const long long inf = std::numeric_limits<long long>::max() / 4;

  // Potentials u, v and the matching p over 1-based columns; column 0 is the
  // virtual source used while growing augmenting paths.
  std::vector<long long> u(n + 1, 0), v(n + 1, 0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<long long> min_slack(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = -1;
      long long delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const long long reduced = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (reduced < min_slack[j]) {
          min_slack[j] = reduced;
          way[j] = j0;
        }
        if (min_slack[j] < delta) {
          delta = min_slack[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          min_slack[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> assignment(static_cast<std::size_t>(n), -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] != 0) assignment[static_cast<std::size_t>(p[j] - 1)] = j - 1;
  return assignment;
}

}  // namespace splr
