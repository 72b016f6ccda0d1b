#pragma once

#include "reachmesh/environment.hpp"

namespace reachmesh {

/// Physical and numerical parameters of the spring-loaded inverted pendulum
/// hopper. Defaults give a comfortable period-1 gait under the zero policy.
struct SlipParams {
  double mass = 1.0;           // kg
  double gravity = 9.81;       // m/s^2
  double stiffness = 300.0;    // N/m, radial leg spring
  double rest_length = 1.0;    // m

  // Action mapping: [0] offsets the touchdown angle, [1] charges the leg.
  double touchdown_angle = 0.12;  // rad from vertical, nominal
  double angle_scale = 0.25;
  double angle_limit = 0.45;      // |theta| clamp, rad
  double thrust_scale = 0.6;      // J per unit action
  double thrust_limit = 1.5;      // |charge| clamp, J
  double action_penalty = 0.01;   // reward penalty per squared action unit

  double h_fail = 0.9;         // apex below this height fails
  double contact_height = 0.3; // stance COM below this height fails
  double min_leg_ratio = 0.5;  // spring compressed past this ratio fails

  double apex_init = 1.15;     // m
  double speed_init = 1.2;     // m/s, near the nominal-angle period-1 gait
  double charge_init = 0.0;    // J
  double init_noise = 0.01;

  double dt = 1e-3;            // s, fixed RK4 step
  double event_tol = 1e-9;     // s, bisection resolution
  long max_steps = 400000;     // integration budget per section step
  int max_phases = 64;         // flight/stance alternation budget
};

/// Apex-to-apex Poincare map of a SLIP hopper.
///
/// State: (apex height, horizontal velocity, stored leg charge). Each step
/// applies the push as a velocity impulse at the apex, queries the policy
/// once on the post-push state for a touchdown angle and a new leg charge,
/// releases the previously stored charge along the leg at the first liftoff,
/// and integrates flight/stance phases until the next apex. The stance
/// spring itself is conservative; the stored charge is the only energy
/// input, and a negative charge brakes.
///
/// Reward per step: forward distance covered by the hop minus
/// action_penalty * |action|^2.
class SlipEnv : public Environment {
 public:
  explicit SlipEnv(SlipParams params = {});

  std::size_t state_dim() const override { return 3; }
  std::size_t action_dim() const override { return 2; }
  StateVector nominal_init() const override {
    return {params_.apex_init, params_.speed_init, params_.charge_init};
  }
  double init_noise_std() const override { return params_.init_noise; }
  bool is_failure(const StateVector& state) const override;
  SectionOutcome section_step(const StateVector& state, const ActionFn& act,
                              const Disturbance& push) const override;

  const SlipParams& params() const { return params_; }

 private:
  SlipParams params_;
};

}  // namespace reachmesh
