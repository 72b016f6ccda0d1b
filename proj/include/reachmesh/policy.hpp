#pragma once

#include <cstddef>
#include <vector>

#include "reachmesh/normalization.hpp"
#include "reachmesh/types.hpp"

namespace reachmesh {

/// Static linear policy: a weight matrix applied to whitened observations.
class LinearPolicy {
 public:
  LinearPolicy() = default;

  /// Zero weights, identity whitening.
  LinearPolicy(std::size_t action_dim, std::size_t obs_dim)
      : action_dim_(action_dim),
        obs_dim_(obs_dim),
        weights_(action_dim * obs_dim, 0.0),
        obs_stats_(NormalizationStats::identity(obs_dim)) {}

  std::size_t action_dim() const { return action_dim_; }
  std::size_t obs_dim() const { return obs_dim_; }

  /// Row-major action_dim x obs_dim.
  std::vector<double>& weights() { return weights_; }
  const std::vector<double>& weights() const { return weights_; }

  double& weight(std::size_t row, std::size_t col) { return weights_[row * obs_dim_ + col]; }
  double weight(std::size_t row, std::size_t col) const { return weights_[row * obs_dim_ + col]; }

  const NormalizationStats& obs_stats() const { return obs_stats_; }
  void set_obs_stats(NormalizationStats stats) {
    stats.validate();
    if (stats.dim() != obs_dim_)
      throw std::invalid_argument("policy: stats dimension does not match observation dimension");
    obs_stats_ = std::move(stats);
  }

  std::vector<double> whiten(const StateVector& obs) const {
    if (obs.size() != obs_dim_) throw std::invalid_argument("policy: observation dimension mismatch");
    std::vector<double> z(obs_dim_);
    for (std::size_t i = 0; i < obs_dim_; ++i)
      z[i] = (obs[i] - obs_stats_.mean[i]) / obs_stats_.std[i];
    return z;
  }

  std::vector<double> apply(const std::vector<double>& whitened) const {
    std::vector<double> action(action_dim_, 0.0);
    for (std::size_t r = 0; r < action_dim_; ++r) {
      double acc = 0.0;
      for (std::size_t c = 0; c < obs_dim_; ++c) acc += weights_[r * obs_dim_ + c] * whitened[c];
      action[r] = acc;
    }
    return action;
  }

  std::vector<double> act(const StateVector& obs) const { return apply(whiten(obs)); }

 private:
  std::size_t action_dim_ = 0;
  std::size_t obs_dim_ = 0;
  std::vector<double> weights_;
  NormalizationStats obs_stats_;
};

}  // namespace reachmesh
