#pragma once

#include <cmath>
#include <stdexcept>

#include "reachmesh/env/slip.hpp"
#include "reachmesh/policy.hpp"

namespace reachmesh::testing {

// Hand-tuned stabilizing feedback around the default SLIP parameters' nominal
// gait. Zero action at the stats mean, so the open-loop period-1 orbit stays
// a fixed point while the closed-loop apex map contracts (spectral radius
// ~0.57 at the fixed point).
inline LinearPolicy slip_fixture_policy() {
  LinearPolicy policy(2, 3);
  policy.set_obs_stats({{1.15, 1.2006067388, 0.0}, {1.0, 1.0, 1.0}});
  policy.weight(0, 0) = 0.5;   // angle <- apex height error
  policy.weight(0, 1) = 1.0;   // angle <- speed error
  policy.weight(1, 0) = -3.0;  // charge <- apex height error
  return policy;
}

/// Locates the period-1 gait of (env, policy) by fixed-point iteration of the
/// apex map, starting from the nominal initial condition. The fixture policy
/// contracts, so iteration is a root finder here.
inline StateVector slip_period1_gait(const SlipEnv& env, const LinearPolicy& policy,
                                     int iterations = 300) {
  StateVector s = env.nominal_init();
  for (int i = 0; i < iterations; ++i) {
    SectionOutcome out = env.section_step(s, policy, Disturbance::none());
    if (out.failed) throw std::runtime_error("slip fixture: gait search fell over");
    s = std::move(out.state);
  }
  return s;
}

inline double slip_energy(const SlipParams& p, const StateVector& apex) {
  return p.mass * p.gravity * apex[0] + 0.5 * p.mass * apex[1] * apex[1] + apex[2];
}

}  // namespace reachmesh::testing
