#pragma once

#include <limits>

#include "splr/core.hpp"
#include "splr/solver.hpp"

namespace splr {

/// Rank features by per-column variance, largest first.
inline FeatureRanking baseline_variance_rank(const Matrix& data, Index top = -1) {
  require_finite(data, "variance ranking input");
  Vector scores(data.cols());
  for (Index j = 0; j < data.cols(); ++j) {
    const double mean = data.col(j).mean();
    scores[j] = (data.col(j).array() - mean).square().sum() /
                static_cast<double>(data.rows());
  }
  return detail::ranking_from_scores(scores, top);
}

/// Laplacian-score ranking over a symmetrized k-nearest-neighbour graph with
/// Gaussian edge weights exp(-dist^2 / (2 bandwidth^2)). Lower scores mean the
/// feature varies smoothly along the graph, so importance is the negated
/// score. Constant features have no graph alignment at all and rank last.
inline FeatureRanking baseline_laplacian_score(const Matrix& data, Index top = -1,
                                               int neighbors = 5, double bandwidth = 10.0) {
  require_finite(data, "laplacian score input");
  const Index n = data.rows();
  if (neighbors < 1) throw std::invalid_argument("laplacian score: neighbors must be >= 1");
  if (!(bandwidth > 0.0)) throw std::invalid_argument("laplacian score: bandwidth must be positive");
  const Index k = std::min<Index>(neighbors, n - 1);

  Matrix dist2(n, n);
  for (Index i = 0; i < n; ++i) {
    dist2(i, i) = 0.0;
    for (Index j = i + 1; j < n; ++j) {
      const double d = (data.row(i) - data.row(j)).squaredNorm();
      dist2(i, j) = d;
      dist2(j, i) = d;
    }
  }

  Matrix weights = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    std::vector<Index> order(static_cast<std::size_t>(n));
    for (Index j = 0; j < n; ++j) order[static_cast<std::size_t>(j)] = j;
    order.erase(order.begin() + i);
    std::partial_sort(order.begin(), order.begin() + k, order.end(), [&](Index x, Index y) {
      if (dist2(i, x) != dist2(i, y)) return dist2(i, x) < dist2(i, y);
      return x < y;
    });
    for (Index t = 0; t < k; ++t) {
      const Index j = order[static_cast<std::size_t>(t)];
      const double w = std::exp(-dist2(i, j) / (2.0 * bandwidth * bandwidth));
      weights(i, j) = w;
      weights(j, i) = w;  // an edge from either side connects both
    }
  }

  const Vector degrees = weights.rowwise().sum();
  const double degree_total = degrees.sum();
  Vector scores(data.cols());
  for (Index j = 0; j < data.cols(); ++j) {
    Vector f = data.col(j);
    f.array() -= f.dot(degrees) / degree_total;
    const double d_norm = f.dot(degrees.asDiagonal() * f);
    if (d_norm < 1e-12) {
      scores[j] = -std::numeric_limits<double>::infinity();
      continue;
    }
    const double smoothness = d_norm - f.dot(weights * f);  // Laplacian quadratic form
    scores[j] = -(smoothness / d_norm);
  }
  return detail::ranking_from_scores(scores, top);
}

}  // namespace splr
