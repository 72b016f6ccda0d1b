#include "reachmesh/reachability.hpp"

#include <chrono>
#include <string>

#include "reachmesh/parallel.hpp"
#include "reachmesh/rng.hpp"

namespace reachmesh {

std::vector<StateVector> seed_states(const Environment& env, const LinearPolicy& policy,
                                     int n_init, int settle_steps, std::uint64_t seed) {
  if (n_init < 1) throw std::invalid_argument("seed_states: n_init must be at least 1");
  if (settle_steps < 0) throw std::invalid_argument("seed_states: settle_steps must be >= 0");

  std::vector<StateVector> seeds;
  seeds.reserve(static_cast<std::size_t>(n_init));
  int skipped = 0;
  for (int i = 0; i < n_init; ++i) {
    rng::Engine engine(rng::derive(seed, {0x5eedu, static_cast<std::uint64_t>(i)}));
    StateVector s = env.nominal_init();
    for (double& x : s) x += env.init_noise_std() * engine.normal();

    bool failed = env.is_failure(s);
    for (int step = 0; !failed && step < settle_steps; ++step) {
      SectionOutcome out = env.section_step(s, policy, Disturbance::none());
      if (out.failed) {
        failed = true;
        break;
      }
      s = std::move(out.state);
    }
    if (failed) {
      ++skipped;
      continue;
    }
    seeds.push_back(std::move(s));
  }
  if (seeds.empty())
    throw EmptySeedError("seed_states: all " + std::to_string(n_init) +
                         " initial conditions failed while settling");
  return seeds;
}

MeshBuildReport create_mesh(const Environment& env, const LinearPolicy& policy,
                            const std::vector<StateVector>& initial_states,
                            const DisturbanceSet& disturbances, double box_size,
                            const NormalizationStats& stats, std::size_t max_states,
                            int threads) {
  if (initial_states.empty()) throw std::invalid_argument("create_mesh: no initial states");
  if (disturbances.pushes.empty()) throw std::invalid_argument("create_mesh: empty disturbance set");
  if (max_states < 1) throw std::invalid_argument("create_mesh: max_states must be at least 1");

  auto t0 = std::chrono::steady_clock::now();

  MeshBuildReport report{Mesh(box_size, stats)};
  Mesh& mesh = report.mesh;

  auto cap_error = [&]() {
    auto t1 = std::chrono::steady_clock::now();
    report.wall_time = std::chrono::duration<double>(t1 - t0).count();
    report.states_explored = static_cast<std::size_t>(mesh.size());
    return MeshCapExceeded("create_mesh: state cap of " + std::to_string(max_states) +
                               " exceeded before closure",
                           std::make_shared<MeshBuildReport>(std::move(report)));
  };

  std::vector<int> frontier;
  for (const StateVector& s : initial_states) {
    if (env.is_failure(s))
      throw std::invalid_argument("create_mesh: initial state satisfies the failure predicate");
    if (static_cast<std::size_t>(mesh.size()) >= max_states &&
        mesh.find(compute_key(s, stats, box_size)) == kFailureId)
      throw cap_error();
    auto [id, is_new] = mesh.insert_or_get(s);
    if (is_new) frontier.push_back(id);
  }
  report.seed_boxes = static_cast<std::size_t>(mesh.size());

  const std::size_t n_pushes = disturbances.size();
  while (!frontier.empty()) {
    report.frontier_peak = std::max(report.frontier_peak, frontier.size());

    // Fan the whole generation out in parallel, then merge serially in
    // (state, disturbance) order so ID assignment matches a serial run.
    std::vector<SectionOutcome> results(frontier.size() * n_pushes);
    parallel_for(results.size(), threads, [&](std::size_t task) {
      int id = frontier[task / n_pushes];
      const Disturbance& push = disturbances.pushes[task % n_pushes];
      results[task] = env.section_step(mesh.representative_state(id), policy, push);
    });

    std::vector<int> next;
    for (std::size_t task = 0; task < results.size(); ++task) {
      int id = frontier[task / n_pushes];
      SectionOutcome& out = results[task];
      if (out.failed) {
        mesh.entry(id).transitions.push_back(kFailureId);
        ++report.failures_recorded;
        continue;
      }
      if (static_cast<std::size_t>(mesh.size()) >= max_states &&
          mesh.find(compute_key(out.state, stats, box_size)) == kFailureId)
        throw cap_error();
      auto [target, is_new] = mesh.insert_or_get(out.state);
      mesh.entry(id).transitions.push_back(target);
      if (is_new) next.push_back(target);
    }
    frontier = std::move(next);
  }

  auto t1 = std::chrono::steady_clock::now();
  report.wall_time = std::chrono::duration<double>(t1 - t0).count();
  report.states_explored = static_cast<std::size_t>(mesh.size());
  return report;
}

}  // namespace reachmesh
