#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "reachmesh/disturbance.hpp"
#include "reachmesh/environment.hpp"

namespace reachmesh {

struct RolloutStats {
  std::size_t trials = 0;
  double mean_steps = 0.0;
  double std_steps = 0.0;
  std::size_t censored = 0;
  /// False when every trial was censored and the moments are meaningless.
  bool valid = false;
};

/// Steps until failure under freshly sampled pushes, or nullopt if the trial
/// survives max_steps.
std::optional<long> rollout_to_failure(const Environment& env, const LinearPolicy& policy,
                                       const DisturbanceSampler& sampler, const StateVector& start,
                                       long max_steps, rng::Engine& engine);

/// Monte Carlo passage-time estimate: `trials` rollouts with starts cycled
/// round-robin and per-trial counter-derived rng streams, aggregated in
/// trial order regardless of the worker count.
RolloutStats mc_mfpt(const Environment& env, const LinearPolicy& policy,
                     const DisturbanceSampler& sampler, const std::vector<StateVector>& starts,
                     std::size_t trials, long max_steps, std::uint64_t seed, int threads = 1,
                     std::vector<long>* per_trial = nullptr);

}  // namespace reachmesh
