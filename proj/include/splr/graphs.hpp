#pragma once

#include "splr/core.hpp"

namespace splr {

/// d-by-d cosine similarity between feature columns. Symmetric, entries in
/// [0, 1] for nonnegative data, unit diagonal except for all-zero features.
using FeatureSimilarity = Matrix;

/// Dense sample-affinity graph: cosine similarity between sample rows, the
/// degrees it induces, and (on demand) the graph Laplacian.
struct SampleGraph {
  Matrix similarity;  // n-by-n, symmetric
  Vector degrees;     // row sums of similarity

  Matrix degree_matrix() const { return Matrix(degrees.asDiagonal()); }
  Matrix laplacian() const { return degree_matrix() - similarity; }
};

namespace detail {

// Cosine Gram matrix of the columns of a: normalize each column to unit
// length (all-zero columns stay zero), multiply, then pin symmetry and the
// diagonal exactly so downstream invariant checks do not chase roundoff.
inline Matrix cosine_gram(const Matrix& a) {
  Matrix unit = a;
  std::vector<bool> nonzero(static_cast<std::size_t>(a.cols()));
  for (Index j = 0; j < a.cols(); ++j) {
    const double norm = unit.col(j).norm();
    nonzero[static_cast<std::size_t>(j)] = norm > 0.0;
    if (norm > 0.0) unit.col(j) /= norm;
  }
  Matrix gram = unit.transpose() * unit;
  gram = ((gram + gram.transpose()) * 0.5).eval();
  for (Index j = 0; j < gram.cols(); ++j)
    gram(j, j) = nonzero[static_cast<std::size_t>(j)] ? 1.0 : 0.0;
  return gram;
}

}  // namespace detail

/// Pairwise cosine similarity between feature columns of a nonnegative data
/// matrix. Duplicated (perfectly correlated) features score 1, which is what
/// the diversity penalty in the solver feeds on.
inline FeatureSimilarity build_feature_similarity(const Matrix& data) {
  require_nonnegative(data, "feature similarity input");
  return detail::cosine_gram(data);
}

/// Cosine affinity between sample rows plus degrees. Rows that are all zeros
/// get zero similarity to everything including themselves, which keeps them
/// isolated in the graph instead of producing NaNs.
inline SampleGraph build_sample_graph(const Matrix& data) {
  require_nonnegative(data, "sample graph input");
  SampleGraph graph;
  graph.similarity = detail::cosine_gram(data.transpose());
  graph.degrees = graph.similarity.rowwise().sum();
  return graph;
}

}  // namespace splr
