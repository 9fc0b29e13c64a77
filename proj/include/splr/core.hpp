#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace splr {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Failure to read or write a file (missing path, unwritable directory).
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed file content (ragged rows, non-numeric cells, empty input).
struct parse_error : io_error {
  using io_error::io_error;
};

/// Invalid parameter values or inconsistent experiment setup.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Draw from (0, 1), strictly excluding both endpoints. Uses the top 53 bits
/// of the engine output so results are identical across standard libraries,
/// unlike std::uniform_real_distribution.
inline double uniform01(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

/// q-th quantile (q in [0, 1]) with linear interpolation between order
/// statistics. Copies its input; fine for the sizes we deal with.
inline double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile of empty set");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= values.size()) return values.back();
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

inline void require_finite(const Matrix& m, const std::string& what) {
  if (!m.allFinite()) throw std::invalid_argument(what + ": non-finite entries");
}

inline void require_nonnegative(const Matrix& m, const std::string& what) {
  require_finite(m, what);
  if (m.size() > 0 && m.minCoeff() < 0.0)
    throw std::invalid_argument(what + ": negative entries (scale the data first)");
}

}  // namespace splr
