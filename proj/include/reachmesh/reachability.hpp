#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "reachmesh/disturbance.hpp"
#include "reachmesh/environment.hpp"
#include "reachmesh/mesh.hpp"
#include "reachmesh/policy.hpp"

namespace reachmesh {

struct MeshBuildReport {
  Mesh mesh;
  std::size_t states_explored = 0;
  std::size_t failures_recorded = 0;
  std::size_t frontier_peak = 0;
  double wall_time = 0.0;
  std::size_t seed_boxes = 0;
};

/// The exploration hit its state cap; carries whatever was built so the
/// blowup is reportable instead of fatal.
class MeshCapExceeded : public std::runtime_error {
 public:
  MeshCapExceeded(std::string what, std::shared_ptr<MeshBuildReport> partial)
      : std::runtime_error(std::move(what)), partial(std::move(partial)) {}

  std::shared_ptr<MeshBuildReport> partial;
};

class EmptySeedError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Perturbs the nominal initial condition n_init times, lets each settle for
/// settle_steps undisturbed section steps, and returns the surviving apex
/// states. Seeds that fail while settling are skipped.
std::vector<StateVector> seed_states(const Environment& env, const LinearPolicy& policy,
                                     int n_init, int settle_steps, std::uint64_t seed);

/// Breadth-first closure of the reachable set: every discovered box is
/// stepped once per disturbance, outcomes are recorded in the entry's
/// transition list, and unseen outcomes join the frontier. Simulation
/// fans out across `threads`; discovery order and ID assignment are
/// identical to a serial run for any worker count.
MeshBuildReport create_mesh(const Environment& env, const LinearPolicy& policy,
                            const std::vector<StateVector>& initial_states,
                            const DisturbanceSet& disturbances, double box_size,
                            const NormalizationStats& stats, std::size_t max_states = 1000000,
                            int threads = 1);

}  // namespace reachmesh
