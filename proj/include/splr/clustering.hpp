#pragma once

#include <limits>
#include <numeric>
#include <vector>

#include "splr/core.hpp"

namespace splr {

struct Partition {
  std::vector<int> assignments;  // per-sample cluster ids in 0..clusters-1
  int clusters = 0;
};

namespace detail {

/// Index of the nearest row of `centers`, ties toward the lower index.
inline int nearest_center(const Matrix& centers, const Eigen::RowVectorXd& point) {
  int best = 0;
  double best_dist = (centers.row(0) - point).squaredNorm();
  for (Index c = 1; c < centers.rows(); ++c) {
    const double dist = (centers.row(c) - point).squaredNorm();
    if (dist < best_dist) {
      best_dist = dist;
      best = static_cast<int>(c);
    }
  }
  return best;
}

/// Weighted draw proportional to `weights` (all nonnegative, positive total).
inline Index weighted_pick(const Vector& weights, double total, std::mt19937_64& rng) {
  const double r = uniform01(rng) * total;
  double cumulative = 0.0;
  for (Index i = 0; i < weights.size(); ++i) {
    cumulative += weights[i];
    if (r <= cumulative && weights[i] > 0.0) return i;
  }
  for (Index i = weights.size() - 1; i >= 0; --i)
    if (weights[i] > 0.0) return i;
  return weights.size() - 1;
}

}  // namespace detail

/// Lloyd's algorithm with k-means++ seeding. Runs to an assignment fixpoint
/// (at most 300 rounds); a cluster that empties out is reseeded to the point
/// currently farthest from its own center. Deterministic for a given seed.
inline Partition kmeans(const Matrix& data, int clusters, std::uint64_t seed) {
  const Index n = data.rows();
  if (clusters < 1 || clusters > n)
    throw std::invalid_argument("kmeans: cluster count out of range");
  std::mt19937_64 rng(seed);

  Matrix centers(clusters, data.cols());
  centers.row(0) = data.row(static_cast<Index>(rng() % static_cast<std::uint64_t>(n)));
  Vector dist2 = (data.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < clusters; ++c) {
    const double total = dist2.sum();
    const Index pick = total > 0.0
                           ? detail::weighted_pick(dist2, total, rng)
                           : static_cast<Index>(rng() % static_cast<std::uint64_t>(n));
    centers.row(c) = data.row(pick);
    dist2 = dist2.cwiseMin((data.rowwise() - centers.row(c)).rowwise().squaredNorm());
  }

  std::vector<int> assignment(static_cast<std::size_t>(n), -1);
  for (int round = 0; round < 300; ++round) {
    std::vector<int> next(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i)
      next[static_cast<std::size_t>(i)] = detail::nearest_center(centers, data.row(i));

    // Give every empty cluster the point that fits its current cluster worst.
    for (int c = 0; c < clusters; ++c) {
      if (std::find(next.begin(), next.end(), c) != next.end()) continue;
      Index farthest = 0;
      double worst = -1.0;
      for (Index i = 0; i < n; ++i) {
        const double dist =
            (data.row(i) - centers.row(next[static_cast<std::size_t>(i)])).squaredNorm();
        if (dist > worst) {
          worst = dist;
          farthest = i;
        }
      }
      centers.row(c) = data.row(farthest);
      next[static_cast<std::size_t>(farthest)] = c;
    }

    if (next == assignment) break;
    assignment = next;
    for (int c = 0; c < clusters; ++c) {
      Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(data.cols());
      int count = 0;
      for (Index i = 0; i < n; ++i) {
        if (assignment[static_cast<std::size_t>(i)] == c) {
          mean += data.row(i);
          ++count;
        }
      }
      if (count > 0) centers.row(c) = mean / count;
    }
  }
  return Partition{assignment, clusters};
}

struct PamResult {
  Partition partition;
  std::vector<double> cost_trace;  // total dissimilarity after build, then per swap
};

/// Classic k-medoids: greedy BUILD seeding followed by best-improvement SWAP
/// until no swap lowers the total within-cluster dissimilarity (Euclidean).
/// The procedure is deterministic; the seed only breaks exact cost ties.
inline PamResult pam_detailed(const Matrix& data, int clusters, std::uint64_t seed) {
  const Index n = data.rows();
  if (clusters < 1 || clusters > n)
    throw std::invalid_argument("pam: cluster count out of range");
  std::mt19937_64 rng(seed);
  auto pick_tied = [&rng](const std::vector<Index>& tied) {
    return tied[static_cast<std::size_t>(rng() % tied.size())];
  };

  Matrix dist(n, n);
  for (Index i = 0; i < n; ++i) {
    dist(i, i) = 0.0;
    for (Index j = i + 1; j < n; ++j) {
      const double d = (data.row(i) - data.row(j)).norm();
      dist(i, j) = d;
      dist(j, i) = d;
    }
  }

  // BUILD: start from the most central point, then repeatedly add the point
  // that reduces the total distance-to-nearest-medoid the most.
  std::vector<Index> medoids;
  std::vector<char> is_medoid(static_cast<std::size_t>(n), 0);
  {
    std::vector<Index> tied;
    double best = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < n; ++i) {
      const double total = dist.row(i).sum();
      if (total < best) {
        best = total;
        tied = {i};
      } else if (total == best) {
        tied.push_back(i);
      }
    }
    medoids.push_back(pick_tied(tied));
    is_medoid[static_cast<std::size_t>(medoids[0])] = 1;
  }
  Vector nearest = dist.col(medoids[0]);
  while (static_cast<int>(medoids.size()) < clusters) {
    std::vector<Index> tied;
    double best_gain = -1.0;
    for (Index i = 0; i < n; ++i) {
      if (is_medoid[static_cast<std::size_t>(i)]) continue;
      double gain = 0.0;
      for (Index j = 0; j < n; ++j) gain += std::max(0.0, nearest[j] - dist(i, j));
      if (gain > best_gain) {
        best_gain = gain;
        tied = {i};
      } else if (gain == best_gain) {
        tied.push_back(i);
      }
    }
    const Index added = pick_tied(tied);
    medoids.push_back(added);
    is_medoid[static_cast<std::size_t>(added)] = 1;
    nearest = nearest.cwiseMin(dist.col(added));
  }

  auto total_cost = [&]() {
    double cost = 0.0;
    for (Index j = 0; j < n; ++j) {
      double best = std::numeric_limits<double>::infinity();
      for (Index m : medoids) best = std::min(best, dist(j, m));
      cost += best;
    }
    return cost;
  };

  PamResult result;
  result.cost_trace.push_back(total_cost());

  // SWAP: evaluate every (medoid, candidate) exchange through each point's
  // nearest and second-nearest medoid distances, apply the best strict
  // improvement, and repeat. The tiny threshold stops roundoff-level cycling.
  while (true) {
    Vector near_dist(n), second_dist(n);
    std::vector<int> near_medoid(static_cast<std::size_t>(n));
    for (Index j = 0; j < n; ++j) {
      double d1 = std::numeric_limits<double>::infinity(), d2 = d1;
      int m1 = -1;
      for (std::size_t m = 0; m < medoids.size(); ++m) {
        const double d = dist(j, medoids[m]);
        if (d < d1) {
          d2 = d1;
          d1 = d;
          m1 = static_cast<int>(m);
        } else if (d < d2) {
          d2 = d;
        }
      }
      near_dist[j] = d1;
      second_dist[j] = d2;
      near_medoid[static_cast<std::size_t>(j)] = m1;
    }

    double best_delta = 0.0;
    std::vector<std::pair<std::size_t, Index>> tied_swaps;
    for (std::size_t m = 0; m < medoids.size(); ++m) {
      for (Index h = 0; h < n; ++h) {
        if (is_medoid[static_cast<std::size_t>(h)]) continue;
        double delta = 0.0;
        for (Index j = 0; j < n; ++j) {
          if (near_medoid[static_cast<std::size_t>(j)] == static_cast<int>(m))
            delta += std::min(second_dist[j], dist(j, h)) - near_dist[j];
          else
            delta += std::min(0.0, dist(j, h) - near_dist[j]);
        }
        if (delta < best_delta) {
          best_delta = delta;
          tied_swaps = {{m, h}};
        } else if (delta == best_delta && best_delta < 0.0) {
          tied_swaps.push_back({m, h});
        }
      }
    }
    if (best_delta >= -1e-12) break;
    const auto [m, h] = tied_swaps[static_cast<std::size_t>(rng() % tied_swaps.size())];
    is_medoid[static_cast<std::size_t>(medoids[m])] = 0;
    is_medoid[static_cast<std::size_t>(h)] = 1;
    medoids[m] = h;
    result.cost_trace.push_back(total_cost());
  }

  std::vector<int> assignment(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) {
    int best = 0;
    double best_dist = dist(j, medoids[0]);
    for (std::size_t m = 1; m < medoids.size(); ++m) {
      if (dist(j, medoids[m]) < best_dist) {
        best_dist = dist(j, medoids[m]);
        best = static_cast<int>(m);
      }
    }
    assignment[static_cast<std::size_t>(j)] = best;
  }
  result.partition = Partition{assignment, clusters};
  return result;
}

inline Partition pam(const Matrix& data, int clusters, std::uint64_t seed) {
  return pam_detailed(data, clusters, seed).partition;
}

}  // namespace splr
