#pragma once

#include "reachmesh/environment.hpp"

namespace reachmesh {

/// Absorbing random walk on {1, ..., K-1}: the push angle selects the step
/// direction, position 0 reflects back to 1, and reaching K fails. Its chain
/// is solvable by hand, which makes it the oracle environment for
/// passage-time validation.
class Walk1dEnv : public Environment {
 public:
  explicit Walk1dEnv(int boundary, double start = 1.0);

  std::size_t state_dim() const override { return 1; }
  std::size_t action_dim() const override { return 1; }
  StateVector nominal_init() const override { return {start_}; }
  double init_noise_std() const override { return 0.0; }
  bool is_failure(const StateVector& state) const override;
  SectionOutcome section_step(const StateVector& state, const ActionFn& act,
                              const Disturbance& push) const override;

  int boundary() const { return boundary_; }

 private:
  int boundary_;
  double start_;
};

}  // namespace reachmesh
