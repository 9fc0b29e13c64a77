#pragma once

#include "splr/core.hpp"

namespace splr {

/// Knobs of the self-paced weighting schedule. `pace` is the admission
/// threshold scale (grows geometrically by `growth` each sweep), `gamma`
/// controls the width of the soft interval between full admission and full
/// rejection under the mixture scheme.
struct PaceParams {
  double pace = 1.0;
  double gamma = 2.0;
  double growth = 1.05;

  void validate() const {
    if (!(pace > 0.0)) throw config_error("pace must be positive");
    if (!(gamma > 0.0)) throw config_error("gamma must be positive");
    if (!(growth >= 1.0)) throw config_error("pace growth must be >= 1");
  }
};

/// Binary scheme: admit a sample iff its loss is under the threshold.
inline double weight_hard(double loss, double pace) {
  return loss < pace ? 1.0 : 0.0;
}

/// Linearly decaying scheme: weight falls off with loss until the threshold.
inline double weight_linear(double loss, double pace) {
  return loss < pace ? 1.0 - loss / pace : 0.0;
}

/// Mixture scheme, the closed-form minimizer of
///   v * loss + gamma^2 / (v + gamma / pace)   over v in [0, 1].
/// Full weight up to (pace*gamma/(pace+gamma))^2, zero from pace^2 on, and a
/// smooth 1/sqrt(loss) decay in between. Both branch boundaries meet the
/// middle expression exactly, so the weight is continuous in the loss.
inline double weight_mixture(double loss, double pace, double gamma) {
  const double admit = pace * gamma / (pace + gamma);
  if (loss <= admit * admit) return 1.0;
  if (loss >= pace * pace) return 0.0;
  return gamma * (1.0 / std::sqrt(loss) - 1.0 / pace);
}

/// Mixture weights for a whole loss vector.
inline Vector update_weights(const Vector& losses, const PaceParams& params) {
  params.validate();
  if (!losses.allFinite() || (losses.size() > 0 && losses.minCoeff() < 0.0))
    throw std::invalid_argument("losses must be finite and nonnegative");
  Vector weights(losses.size());
  for (Index i = 0; i < losses.size(); ++i)
    weights[i] = weight_mixture(losses[i], params.pace, params.gamma);
  return weights;
}

}  // namespace splr
