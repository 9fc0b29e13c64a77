#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "splr/core.hpp"

namespace splr {

/// Sample-by-feature matrix (rows are samples). Construction checks the
/// invariants every downstream consumer relies on: finite entries and at
/// least two samples and two features.
class DataMatrix {
 public:
  explicit DataMatrix(Matrix values) : values_(std::move(values)) {
    require_finite(values_, "data matrix");
    if (values_.rows() < 2)
      throw std::invalid_argument("data matrix: need at least 2 samples, got " +
                                  std::to_string(values_.rows()));
    if (values_.cols() < 2)
      throw std::invalid_argument("data matrix: need at least 2 features, got " +
                                  std::to_string(values_.cols()));
  }

  const Matrix& values() const { return values_; }
  Index samples() const { return values_.rows(); }
  Index features() const { return values_.cols(); }

 private:
  Matrix values_;
};

/// Per-sample class labels remapped to dense ids 0..classes-1 in first
/// appearance order. Only evaluation code ever sees labels; the solver
/// stays unsupervised by construction.
class LabelVector {
 public:
  explicit LabelVector(const std::vector<std::string>& raw) {
    if (raw.empty()) throw std::invalid_argument("labels: no rows");
    std::map<std::string, int> ids;
    labels_.reserve(raw.size());
    for (const auto& token : raw) {
      auto [it, inserted] = ids.emplace(token, static_cast<int>(ids.size()));
      labels_.push_back(it->second);
    }
    classes_ = static_cast<int>(ids.size());
  }

  const std::vector<int>& labels() const { return labels_; }
  int classes() const { return classes_; }
  Index size() const { return static_cast<Index>(labels_.size()); }

 private:
  std::vector<int> labels_;
  int classes_ = 0;
};

inline void check_pairing(const DataMatrix& data, const LabelVector& labels) {
  if (labels.size() != data.samples())
    throw config_error("label count " + std::to_string(labels.size()) +
                       " does not match sample count " + std::to_string(data.samples()));
}

/// Min-max scale each feature column to [0, 1]. Constant columns carry no
/// ranking information, so they map to all zeros rather than dividing by a
/// zero range. Idempotent on already scaled data.
inline DataMatrix scale_features(const DataMatrix& data) {
  Matrix scaled = data.values();
  for (Index j = 0; j < scaled.cols(); ++j) {
    const double lo = scaled.col(j).minCoeff();
    const double hi = scaled.col(j).maxCoeff();
    if (hi > lo)
      scaled.col(j) = (scaled.col(j).array() - lo) / (hi - lo);
    else
      scaled.col(j).setZero();
  }
  return DataMatrix(std::move(scaled));
}

}  // namespace splr
