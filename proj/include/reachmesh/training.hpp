#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "reachmesh/environment.hpp"
#include "reachmesh/normalization.hpp"
#include "reachmesh/policy.hpp"

namespace reachmesh {

struct ArsConfig {
  double step_size = 0.02;        // alpha
  double exploration_std = 0.025; // sigma
  int directions = 50;            // N
  int top_directions = 20;        // b
  int episode_steps = 200;
  int epochs = 100;
  std::uint64_t seed = 0;
  double action_noise_std = 0.01;
  double obs_noise_std = 0.001;
  // Box scales for the trajectory dimension that divides the fractal return.
  double dm_d0 = 1e-2;
  double dm_factor = 1.5;
  int threads = 1;

  void validate() const;
};

enum class Objective { standard, fractal };

struct EpisodeRecord {
  std::vector<StateVector> states;  // includes the initial state
  double episode_return = 0.0;
  std::size_t steps = 0;            // states.size() - 1
};

/// Rolls one undisturbed episode: Gaussian noise offsets the nominal initial
/// condition, observation noise is added to the whitened observation before
/// the policy and action noise after it, and the reward accumulates until
/// failure or the step budget.
EpisodeRecord evaluate_episode(const Environment& env, const LinearPolicy& policy,
                               double action_noise_std, double obs_noise_std, rng::Engine& engine,
                               int episode_steps);

/// Return scaled down by the trajectory's mesh dimension (Dm >= 1).
double fractal_return(const EpisodeRecord& record, const NormalizationStats& stats, double d0,
                      double f);

struct EpochLog {
  int epoch = 0;
  double mean_return = 0.0;          // raw, over all 2N episodes
  double mean_fractal_return = 0.0;  // Dm-scaled, over all 2N episodes
  double dm_best = 1.0;              // Dm of the best raw-return episode
  bool update_skipped = false;       // sigma_R was zero
};

struct TrainResult {
  LinearPolicy policy;
  RunningStats obs_accumulator;  // carried so training can resume exactly
  std::vector<EpochLog> log;
};

/// ARS-V2t: per epoch, N Gaussian direction matrices are evaluated at
/// +/- sigma perturbations, directions are ranked by max(r+, r-) with ties
/// to the lower index, and the top b drive the update scaled by the std of
/// the 2b retained returns. Whitening statistics are frozen within an epoch
/// and refreshed from all states seen. Under the fractal objective every
/// return is replaced by its Dm-scaled value before ranking and updating.
TrainResult ars_train(const Environment& env, const ArsConfig& config, Objective objective,
                      const LinearPolicy* init_policy = nullptr,
                      const RunningStats* init_obs = nullptr);

}  // namespace reachmesh
