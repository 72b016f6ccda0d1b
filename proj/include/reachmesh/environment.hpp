#pragma once

#include <functional>
#include <utility>

#include "reachmesh/disturbance.hpp"
#include "reachmesh/policy.hpp"
#include "reachmesh/types.hpp"

namespace reachmesh {

/// Result of one Poincare-section step: either the next section state plus
/// the reward earned over the step, or absorption into failure.
struct SectionOutcome {
  bool failed = false;
  StateVector state;
  double reward = 0.0;

  static SectionOutcome failure() { return {true, {}, 0.0}; }
  static SectionOutcome next(StateVector s, double r) { return {false, std::move(s), r}; }
};

/// Maps a raw observation to an action. Training wraps a LinearPolicy with
/// noise injection; analysis passes the policy through unchanged.
using ActionFn = std::function<std::vector<double>(const StateVector&)>;

/// Deterministic section-to-section dynamics under a disturbance. The action
/// function is invoked exactly once per step, so callers may thread stateful
/// noise generators through it.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::size_t state_dim() const = 0;
  virtual std::size_t action_dim() const = 0;

  virtual StateVector nominal_init() const = 0;
  /// Per-coordinate std of the Gaussian offset applied to nominal_init when
  /// seeding episodes and meshes.
  virtual double init_noise_std() const = 0;

  virtual bool is_failure(const StateVector& state) const = 0;

  virtual SectionOutcome section_step(const StateVector& state, const ActionFn& act,
                                      const Disturbance& push) const = 0;

  SectionOutcome section_step(const StateVector& state, const LinearPolicy& policy,
                              const Disturbance& push) const {
    return section_step(state, [&policy](const StateVector& obs) { return policy.act(obs); },
                        push);
  }
};

}  // namespace reachmesh
