#include "reachmesh/rollout.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "reachmesh/parallel.hpp"

namespace reachmesh {

std::optional<long> rollout_to_failure(const Environment& env, const LinearPolicy& policy,
                                       const DisturbanceSampler& sampler, const StateVector& start,
                                       long max_steps, rng::Engine& engine) {
  if (max_steps < 1) throw std::invalid_argument("rollout: max_steps must be at least 1");
  if (env.is_failure(start)) throw std::invalid_argument("rollout: start state already failed");
  sampler.validate();

  StateVector state = start;
  for (long step = 1; step <= max_steps; ++step) {
    Disturbance push = sample_disturbance(sampler, engine);
    SectionOutcome out = env.section_step(state, policy, push);
    if (out.failed) return step;
    state = std::move(out.state);
  }
  return std::nullopt;
}

RolloutStats mc_mfpt(const Environment& env, const LinearPolicy& policy,
                     const DisturbanceSampler& sampler, const std::vector<StateVector>& starts,
                     std::size_t trials, long max_steps, std::uint64_t seed, int threads,
                     std::vector<long>* per_trial) {
  if (trials < 1) throw std::invalid_argument("mc_mfpt: trials must be at least 1");
  if (starts.empty()) throw std::invalid_argument("mc_mfpt: no start states");

  // -1 marks a censored trial.
  std::vector<long> outcomes(trials, -1);
  parallel_for(trials, threads, [&](std::size_t trial) {
    rng::Engine engine(rng::derive(seed, {0x0110u, trial}));
    const StateVector& start = starts[trial % starts.size()];
    auto steps = rollout_to_failure(env, policy, sampler, start, max_steps, engine);
    outcomes[trial] = steps ? *steps : -1;
  });

  RolloutStats stats;
  stats.trials = trials;
  double sum = 0.0;
  std::size_t uncensored = 0;
  for (long steps : outcomes) {
    if (steps < 0) {
      ++stats.censored;
      continue;
    }
    sum += static_cast<double>(steps);
    ++uncensored;
  }
  if (uncensored == 0) {
    stats.mean_steps = std::numeric_limits<double>::quiet_NaN();
    stats.std_steps = std::numeric_limits<double>::quiet_NaN();
    stats.valid = false;
  } else {
    stats.mean_steps = sum / static_cast<double>(uncensored);
    double ss = 0.0;
    for (long steps : outcomes) {
      if (steps < 0) continue;
      double d = static_cast<double>(steps) - stats.mean_steps;
      ss += d * d;
    }
    stats.std_steps =
        uncensored > 1 ? std::sqrt(ss / static_cast<double>(uncensored - 1)) : 0.0;
    stats.valid = true;
  }
  if (per_trial) *per_trial = std::move(outcomes);
  return stats;
}

}  // namespace reachmesh
