#include "reachmesh/training.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "reachmesh/fracdim.hpp"
#include "reachmesh/parallel.hpp"

namespace reachmesh {

void ArsConfig::validate() const {
  if (!(step_size > 0.0)) throw std::invalid_argument("ars: step_size must be positive");
  if (!(exploration_std > 0.0)) throw std::invalid_argument("ars: exploration_std must be positive");
  if (directions < 1) throw std::invalid_argument("ars: directions must be at least 1");
  if (top_directions < 1 || top_directions > directions)
    throw std::invalid_argument("ars: top_directions must be in [1, directions]");
  if (episode_steps < 1) throw std::invalid_argument("ars: episode_steps must be at least 1");
  if (epochs < 0) throw std::invalid_argument("ars: epochs must be non-negative");
  if (action_noise_std < 0.0 || obs_noise_std < 0.0)
    throw std::invalid_argument("ars: noise stds must be non-negative");
}

EpisodeRecord evaluate_episode(const Environment& env, const LinearPolicy& policy,
                               double action_noise_std, double obs_noise_std, rng::Engine& engine,
                               int episode_steps) {
  if (episode_steps < 1) throw std::invalid_argument("evaluate_episode: episode_steps must be >= 1");

  EpisodeRecord record;
  StateVector state = env.nominal_init();
  for (double& x : state) x += env.init_noise_std() * engine.normal();
  record.states.push_back(state);
  if (env.is_failure(state)) return record;

  // Per step: obs_dim normal draws, then action_dim draws. Fixed order keeps
  // episodes reproducible from their seed alone.
  ActionFn noisy_act = [&](const StateVector& obs) {
    std::vector<double> z = policy.whiten(obs);
    for (double& v : z) v += obs_noise_std * engine.normal();
    std::vector<double> action = policy.apply(z);
    for (double& a : action) a += action_noise_std * engine.normal();
    return action;
  };

  for (int step = 0; step < episode_steps; ++step) {
    SectionOutcome out = env.section_step(state, noisy_act, Disturbance::none());
    if (out.failed) break;
    record.episode_return += out.reward;
    state = std::move(out.state);
    record.states.push_back(state);
  }
  record.steps = record.states.size() - 1;
  return record;
}

double fractal_return(const EpisodeRecord& record, const NormalizationStats& stats, double d0,
                      double f) {
  return record.episode_return / trajectory_mesh_dim(record.states, stats, d0, f);
}

TrainResult ars_train(const Environment& env, const ArsConfig& config, Objective objective,
                      const LinearPolicy* init_policy, const RunningStats* init_obs) {
  config.validate();

  const std::size_t action_dim = env.action_dim();
  const std::size_t obs_dim = env.state_dim();
  const std::size_t weight_count = action_dim * obs_dim;
  const int n_dirs = config.directions;

  TrainResult result{LinearPolicy(action_dim, obs_dim), RunningStats(obs_dim), {}};
  if (init_policy) {
    if (init_policy->action_dim() != action_dim || init_policy->obs_dim() != obs_dim)
      throw std::invalid_argument("ars: init_policy dimensions do not match the environment");
    result.policy = *init_policy;
    result.obs_accumulator = init_obs
                                 ? *init_obs
                                 : RunningStats::from_moments(0, init_policy->obs_stats().mean,
                                                              init_policy->obs_stats().std);
  } else if (init_obs) {
    result.obs_accumulator = *init_obs;
    result.policy.set_obs_stats(init_obs->snapshot());
  }

  LinearPolicy& policy = result.policy;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const std::uint64_t ep = static_cast<std::uint64_t>(epoch);

    // Direction matrices for this epoch, drawn in index order.
    rng::Engine dir_engine(rng::derive(config.seed, {0xd14u, ep}));
    std::vector<std::vector<double>> deltas(static_cast<std::size_t>(n_dirs));
    for (auto& delta : deltas) {
      delta.resize(weight_count);
      for (double& w : delta) w = dir_engine.normal();
    }

    // 2N evaluations, each on its own counter-derived stream.
    std::vector<EpisodeRecord> records(2 * static_cast<std::size_t>(n_dirs));
    parallel_for(records.size(), config.threads, [&](std::size_t task) {
      std::size_t k = task / 2;
      bool positive = (task % 2) == 0;
      LinearPolicy probe = policy;
      double sign = positive ? 1.0 : -1.0;
      for (std::size_t i = 0; i < weight_count; ++i)
        probe.weights()[i] += sign * config.exploration_std * deltas[k][i];
      rng::Engine engine(rng::derive(config.seed, {0xe915u, ep, k, positive ? 1u : 0u}));
      records[task] = evaluate_episode(env, probe, config.action_noise_std, config.obs_noise_std,
                                       engine, config.episode_steps);
    });

    std::vector<double> raw(records.size()), scored(records.size());
    std::vector<double> dms(records.size(), 1.0);
    for (std::size_t i = 0; i < records.size(); ++i) {
      raw[i] = records[i].episode_return;
      dms[i] = records[i].states.size() >= 2
                   ? trajectory_mesh_dim(records[i].states, policy.obs_stats(), config.dm_d0,
                                         config.dm_factor)
                   : 1.0;
      scored[i] = raw[i] / dms[i];
    }
    const std::vector<double>& objective_returns = objective == Objective::fractal ? scored : raw;

    // Rank directions by their better side; ties break to the lower index.
    std::vector<std::size_t> order(static_cast<std::size_t>(n_dirs));
    std::iota(order.begin(), order.end(), 0);
    auto side_max = [&](std::size_t k) {
      return std::max(objective_returns[2 * k], objective_returns[2 * k + 1]);
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return side_max(a) > side_max(b); });
    order.resize(static_cast<std::size_t>(config.top_directions));
    std::sort(order.begin(), order.end());  // fixed-order summation by direction index

    double mean_retained = 0.0;
    for (std::size_t k : order) mean_retained += objective_returns[2 * k] + objective_returns[2 * k + 1];
    mean_retained /= static_cast<double>(2 * order.size());
    double var_retained = 0.0;
    for (std::size_t k : order) {
      double dp = objective_returns[2 * k] - mean_retained;
      double dm = objective_returns[2 * k + 1] - mean_retained;
      var_retained += dp * dp + dm * dm;
    }
    double sigma_r = std::sqrt(var_retained / static_cast<double>(2 * order.size()));

    EpochLog log_entry;
    log_entry.epoch = epoch;
    log_entry.mean_return = std::accumulate(raw.begin(), raw.end(), 0.0) /
                            static_cast<double>(raw.size());
    log_entry.mean_fractal_return = std::accumulate(scored.begin(), scored.end(), 0.0) /
                                    static_cast<double>(scored.size());
    std::size_t best = static_cast<std::size_t>(
        std::max_element(raw.begin(), raw.end()) - raw.begin());
    log_entry.dm_best = dms[best];

    if (sigma_r == 0.0) {
      log_entry.update_skipped = true;
    } else {
      double scale = config.step_size /
                     (static_cast<double>(config.top_directions) * sigma_r);
      for (std::size_t k : order) {
        double gain = objective_returns[2 * k] - objective_returns[2 * k + 1];
        for (std::size_t i = 0; i < weight_count; ++i)
          policy.weights()[i] += scale * gain * deltas[k][i];
      }
    }

    // V2: refresh whitening from every state seen, in episode order.
    for (const EpisodeRecord& rec : records)
      for (const StateVector& s : rec.states) result.obs_accumulator.observe(s);
    policy.set_obs_stats(result.obs_accumulator.snapshot());

    result.log.push_back(log_entry);
  }
  return result;
}

}  // namespace reachmesh
