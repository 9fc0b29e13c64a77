#pragma once

#include <optional>

#include "splr/core.hpp"
#include "splr/data.hpp"
#include "splr/graphs.hpp"
#include "splr/self_paced.hpp"

namespace splr {

/// Hyperparameters of the self-paced feature-selection solver. The four
/// lambda-style weights trade off row sparsity (alpha), feature diversity
/// (lambda1), manifold preservation (lambda2) and soft orthogonality of the
/// projection (lambda3).
struct SolverConfig {
  double alpha = 1.0;
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  double lambda3 = 1.0;
  double gamma = 2.0;  // soft-interval width of the sample weighting
  double mu = 1.05;    // pace growth per iteration; 1 freezes the pace
  std::optional<double> eta0;  // initial pace; unset derives it from the data
  int subspace_dim = 0;        // 0 resolves to min(200, feature count)
  int max_iter = 1500;
  double tol = 1e-6;  // relative objective-change stopping threshold
  double eps = 1e-8;  // floor for update denominators and row norms
  std::uint64_t seed = 42;
  bool record_weight_history = false;

  int resolved_subspace_dim(Index features) const {
    return subspace_dim == 0 ? static_cast<int>(std::min<Index>(200, features))
                             : subspace_dim;
  }

  void validate(Index features) const {
    if (!(alpha > 0.0) || !(lambda1 > 0.0) || !(lambda2 > 0.0) || !(lambda3 > 0.0))
      throw config_error("alpha and lambda weights must be strictly positive");
    if (!(gamma > 0.0)) throw config_error("gamma must be positive");
    if (!(mu >= 1.0)) throw config_error("mu must be >= 1");
    if (eta0 && !(*eta0 > 0.0)) throw config_error("eta0 must be positive");
    const int k = resolved_subspace_dim(features);
    if (k < 1 || k > features)
      throw config_error("subspace dimension " + std::to_string(k) +
                         " out of range for " + std::to_string(features) + " features");
    if (max_iter < 1) throw config_error("max_iter must be >= 1");
    if (!(tol > 0.0)) throw config_error("tol must be positive");
    if (!(eps > 0.0)) throw config_error("eps must be positive");
  }
};

struct SolverState {
  Matrix projection;      // d-by-K, nonnegative; rows score features
  Matrix reconstruction;  // K-by-d, nonnegative
  Vector sample_weights;  // per-sample self-paced weights in [0, 1]
  double pace = 0.0;      // pace in force when the last objective was recorded
  int iterations = 0;
  bool converged = false;
  std::vector<double> objective_history;  // one entry per iteration
  std::vector<double> pace_history;       // pace in force for each entry
  std::vector<Vector> weight_history;     // only when record_weight_history
};

/// Data-dependent matrices that stay fixed across iterations: the feature
/// similarity plus the two feature-by-feature products through the sample
/// graph that the multiplicative update splits the Laplacian into.
struct SolverTerms {
  Matrix feature_similarity;
  Matrix similarity_gram;  // data' * sample_similarity * data
  Matrix degree_gram;      // data' * sample_degrees * data
};

inline SolverTerms make_solver_terms(const Matrix& x, const FeatureSimilarity& sim,
                                     const SampleGraph& graph) {
  SolverTerms terms;
  terms.feature_similarity = sim;
  terms.similarity_gram = x.transpose() * graph.similarity * x;
  terms.degree_gram = x.transpose() * graph.degrees.asDiagonal() * x;
  return terms;
}

/// Squared reconstruction error of every sample row under the current factors.
inline Vector per_sample_losses(const Matrix& x, const Matrix& projection,
                                const Matrix& reconstruction) {
  return (x - x * projection * reconstruction).rowwise().squaredNorm();
}

/// Rows rescaled by the square roots of their weights, so that plain least
/// squares on the result reproduces the weighted reconstruction term.
inline Matrix weighted_data(const Matrix& x, const Vector& weights) {
  if (weights.size() != x.rows())
    throw std::invalid_argument("weighted_data: weight count does not match rows");
  return weights.array().sqrt().matrix().asDiagonal() * x;
}

/// Diagonal of the iteratively reweighted form of the half quasi-norm:
/// 1 / max(||w_i||^(3/2), eps). The floor keeps vanished rows from blowing
/// up the denominator they feed.
inline Vector row_weight_diag(const Matrix& projection, double eps) {
  Vector diag(projection.rows());
  for (Index i = 0; i < projection.rows(); ++i) {
    const double norm = projection.row(i).norm();
    diag[i] = 1.0 / std::max(norm * std::sqrt(norm), eps);
  }
  return diag;
}

/// Closed-form sample weights for the given losses at the state's pace.
inline Vector update_v(const SolverState& state, const Vector& losses,
                       const SolverConfig& cfg) {
  return update_weights(losses, PaceParams{state.pace, cfg.gamma, cfg.mu});
}

/// Multiplicative reconstruction update. `gram` is G^T G for the weighted
/// data G; zeros in the input stay zero, positive entries stay positive.
inline Matrix update_h(const Matrix& reconstruction, const Matrix& projection,
                       const Matrix& gram, double eps) {
  const Matrix pulled = projection.transpose() * gram;  // K-by-d
  const Matrix denom = pulled * projection * reconstruction;
  return (reconstruction.array() * pulled.array() / (denom.array() + eps)).matrix();
}

/// Multiplicative projection update. Attractive pieces (weighted data fit,
/// graph similarity, orthogonality target) sit in the numerator; repulsive
/// pieces (sparsity reweighting, feature redundancy, graph degrees, the
/// Gram of the projection itself) in the denominator.
inline Matrix update_w(const Matrix& projection, const Matrix& reconstruction,
                       const Matrix& gram, const SolverTerms& terms,
                       const SolverConfig& cfg) {
  const Index k = projection.cols();
  const Matrix hht = reconstruction * reconstruction.transpose();
  const Vector row_sums = projection.rowwise().sum();
  const Vector redundancy = terms.feature_similarity * row_sums;  // one column, tiled below
  const Vector reweight = row_weight_diag(projection, cfg.eps);

  const Matrix numer = gram * reconstruction.transpose() +
                       cfg.lambda2 * (terms.similarity_gram * projection) +
                       cfg.lambda3 * projection;
  const Matrix denom = gram * projection * hht +
                       cfg.alpha * (reweight.asDiagonal() * projection) +
                       cfg.lambda1 * redundancy.replicate(1, k) +
                       cfg.lambda2 * (terms.degree_gram * projection) +
                       cfg.lambda3 * (projection * (projection.transpose() * projection));
  return (projection.array() * numer.array() / (denom.array() + cfg.eps)).matrix();
}

/// Full penalized objective: weighted reconstruction, self-paced regularizer,
/// feature-diversity and manifold terms, the half quasi-norm row sparsity,
/// and the quadratic penalty that stands in for the orthogonality constraint.
inline double objective(const Matrix& x, const Matrix& projection,
                        const Matrix& reconstruction, const Vector& weights,
                        double pace, const SolverTerms& terms, const SolverConfig& cfg) {
  const Vector losses = per_sample_losses(x, projection, reconstruction);
  const double fit = weights.dot(losses);

  double spl = 0.0;
  for (Index i = 0; i < weights.size(); ++i)
    spl += cfg.gamma * cfg.gamma / (weights[i] + cfg.gamma / pace);

  const Vector row_sums = projection.rowwise().sum();
  const double diversity = row_sums.dot(terms.feature_similarity * row_sums);

  const Matrix embed_laplacian = terms.degree_gram - terms.similarity_gram;
  const double manifold =
      (embed_laplacian * projection).cwiseProduct(projection).sum();

  double sparsity = 0.0;
  for (Index i = 0; i < projection.rows(); ++i)
    sparsity += std::sqrt(projection.row(i).norm());

  const Matrix gram_gap = projection.transpose() * projection -
                          Matrix::Identity(projection.cols(), projection.cols());

  return fit + spl + cfg.lambda1 * diversity + cfg.lambda2 * manifold +
         cfg.alpha * sparsity + 0.5 * cfg.lambda3 * gram_gap.squaredNorm();
}

inline double objective(const Matrix& x, const SolverState& state,
                        const SolverTerms& terms, const SolverConfig& cfg) {
  return objective(x, state.projection, state.reconstruction, state.sample_weights,
                   state.pace, terms, cfg);
}

/// Alternate the sample-weight, reconstruction and projection updates until
/// the relative objective change drops under tol or max_iter is reached.
/// Each recorded objective uses the pace that produced that iteration's
/// weights; the pace then grows by mu for the next sweep.
inline SolverState fit(const DataMatrix& data, const SolverConfig& cfg) {
  const Matrix& x = data.values();
  cfg.validate(x.cols());
  require_nonnegative(x, "solver input");
  const Index k = cfg.resolved_subspace_dim(x.cols());

  SolverState state;
  state.projection = Matrix::Ones(x.cols(), k);
  state.reconstruction = Matrix(k, x.cols());
  std::mt19937_64 rng(cfg.seed);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < x.cols(); ++j) state.reconstruction(i, j) = uniform01(rng);

  const SolverTerms terms =
      make_solver_terms(x, build_feature_similarity(x), build_sample_graph(x));

  double pace;
  if (cfg.eta0) {
    pace = *cfg.eta0;
  } else {
    const Vector initial = per_sample_losses(x, state.projection, state.reconstruction);
    const std::vector<double> values(initial.data(), initial.data() + initial.size());
    const double p90 = quantile(values, 0.9);
    // Admit roughly the easiest 90% of samples at the start. Falls back to 1
    // if the initial factors happen to reconstruct the data near-perfectly.
    pace = p90 > 1e-12 ? std::sqrt(p90) : 1.0;
  }

  double previous = 0.0;
  for (int it = 0; it < cfg.max_iter; ++it) {
    const Vector losses = per_sample_losses(x, state.projection, state.reconstruction);
    state.sample_weights = update_weights(losses, PaceParams{pace, cfg.gamma, cfg.mu});
    const Matrix weighted = weighted_data(x, state.sample_weights);
    const Matrix gram = weighted.transpose() * weighted;
    state.reconstruction = update_h(state.reconstruction, state.projection, gram, cfg.eps);
    state.projection = update_w(state.projection, state.reconstruction, gram, terms, cfg);

    state.pace = pace;
    const double value = objective(x, state, terms, cfg);
    state.objective_history.push_back(value);
    state.pace_history.push_back(pace);
    if (cfg.record_weight_history) state.weight_history.push_back(state.sample_weights);
    state.iterations = it + 1;

    if (it > 0 && std::abs(value - previous) / std::max(1.0, std::abs(previous)) < cfg.tol) {
      state.converged = true;
      break;
    }
    previous = value;
    pace *= cfg.mu;
  }
  return state;
}

/// Features ordered by importance, higher scores first.
struct FeatureRanking {
  std::vector<Index> order;    // feature indices, best first
  std::vector<double> scores;  // importance aligned with order, non-increasing
};

namespace detail {

/// Sort descending by score, ties toward the smaller index, truncate to
/// `top` when it is nonnegative.
inline FeatureRanking ranking_from_scores(const Vector& scores, Index top) {
  const Index d = scores.size();
  FeatureRanking ranking;
  ranking.order.resize(static_cast<std::size_t>(d));
  for (Index i = 0; i < d; ++i) ranking.order[static_cast<std::size_t>(i)] = i;
  std::sort(ranking.order.begin(), ranking.order.end(), [&](Index a, Index b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });
  if (top >= 0 && top < d) ranking.order.resize(static_cast<std::size_t>(top));
  ranking.scores.reserve(ranking.order.size());
  for (Index i : ranking.order) ranking.scores.push_back(scores[i]);
  return ranking;
}

}  // namespace detail

/// Score every feature by the squared norm of its projection row. Pass a
/// nonnegative `top` to truncate the ranking.
inline FeatureRanking rank_features(const SolverState& state, Index top = -1) {
  return detail::ranking_from_scores(state.projection.rowwise().squaredNorm(), top);
}

}  // namespace splr
