#pragma once

#include "reachmesh/environment.hpp"

namespace reachmesh {

/// One-dimensional quadratic surrogate for exercising the trainer: the state
/// is frozen at its (noise-offset) initial value and the reward is
/// peak_reward - (action - (state - nominal))^2, so a linear policy on the
/// whitened state can reach the peak exactly once its whitening statistics
/// settle. Never fails.
class QuadraticEnv : public Environment {
 public:
  QuadraticEnv(double peak_reward = 10.0, double nominal = 1.0, double init_noise = 0.1)
      : peak_reward_(peak_reward), nominal_(nominal), init_noise_(init_noise) {}

  std::size_t state_dim() const override { return 1; }
  std::size_t action_dim() const override { return 1; }
  StateVector nominal_init() const override { return {nominal_}; }
  double init_noise_std() const override { return init_noise_; }
  bool is_failure(const StateVector&) const override { return false; }

  SectionOutcome section_step(const StateVector& state, const ActionFn& act,
                              const Disturbance&) const override {
    std::vector<double> action = act(state);
    double target = state.at(0) - nominal_;
    double miss = action.at(0) - target;
    return SectionOutcome::next(state, peak_reward_ - miss * miss);
  }

  double peak_reward() const { return peak_reward_; }

 private:
  double peak_reward_;
  double nominal_;
  double init_noise_;
};

}  // namespace reachmesh
