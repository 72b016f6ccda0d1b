#include <doctest.h>

#include <map>
#include <numbers>

#include "reachmesh/env/slip.hpp"
#include "reachmesh/env/walk1d.hpp"
#include "reachmesh/io.hpp"
#include "reachmesh/reachability.hpp"
#include "support/fixtures.hpp"

using namespace reachmesh;

namespace {

/// Everything fails immediately.
class DoomedEnv : public Environment {
 public:
  std::size_t state_dim() const override { return 1; }
  std::size_t action_dim() const override { return 1; }
  StateVector nominal_init() const override { return {0.0}; }
  double init_noise_std() const override { return 0.0; }
  bool is_failure(const StateVector&) const override { return false; }
  SectionOutcome section_step(const StateVector&, const ActionFn&,
                              const Disturbance&) const override {
    return SectionOutcome::failure();
  }
};

/// Plain serial transcription of the breadth-first closure, kept independent
/// of create_mesh: its own queue, its own key table.
struct OracleMesh {
  std::map<std::vector<std::int64_t>, int> ids;
  std::vector<StateVector> representatives;
  std::vector<std::vector<int>> transitions;
};

OracleMesh brute_force_mesh(const Environment& env, const LinearPolicy& policy,
                            const std::vector<StateVector>& seeds, const DisturbanceSet& pushes,
                            double box_size, const NormalizationStats& stats) {
  OracleMesh oracle;
  std::vector<int> queue;
  auto key_of = [&](const StateVector& s) { return compute_key(s, stats, box_size).lattice; };
  auto lookup_or_add = [&](const StateVector& s) {
    auto key = key_of(s);
    auto it = oracle.ids.find(key);
    if (it != oracle.ids.end()) return std::pair<int, bool>{it->second, false};
    int id = static_cast<int>(oracle.representatives.size());
    oracle.ids.emplace(std::move(key), id);
    oracle.representatives.push_back(s);
    oracle.transitions.emplace_back();
    return std::pair<int, bool>{id, true};
  };
  for (const auto& s : seeds) {
    auto [id, fresh] = lookup_or_add(s);
    if (fresh) queue.push_back(id);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int id = queue[head];
    for (const Disturbance& push : pushes.pushes) {
      SectionOutcome out = env.section_step(oracle.representatives[static_cast<std::size_t>(id)],
                                            policy, push);
      if (out.failed) {
        oracle.transitions[static_cast<std::size_t>(id)].push_back(kFailureId);
        continue;
      }
      auto [target, fresh] = lookup_or_add(out.state);
      oracle.transitions[static_cast<std::size_t>(id)].push_back(target);
      if (fresh) queue.push_back(target);
    }
  }
  return oracle;
}

void check_against_oracle(const Mesh& mesh, const OracleMesh& oracle) {
  REQUIRE(mesh.size() == static_cast<int>(oracle.representatives.size()));
  for (int id = 0; id < mesh.size(); ++id) {
    CHECK(mesh.representative_state(id) == oracle.representatives[static_cast<std::size_t>(id)]);
    CHECK(mesh.entry(id).transitions == oracle.transitions[static_cast<std::size_t>(id)]);
  }
}

void check_closure_and_arity(const Mesh& mesh, std::size_t arity) {
  for (int id = 0; id < mesh.size(); ++id) {
    const auto& t = mesh.entry(id).transitions;
    CHECK(t.size() == arity);
    for (int target : t) {
      bool valid = target == kFailureId || (target >= 0 && target < mesh.size());
      CHECK(valid);
    }
  }
}

}  // namespace

TEST_CASE("walk1d mesh covers the whole chain and matches the hand oracle") {
  Walk1dEnv env(5);
  LinearPolicy policy(1, 1);
  DisturbanceSet pushes{{{1.0, 0.0, 0.01}, {1.0, std::numbers::pi, 0.01}}};
  NormalizationStats stats = NormalizationStats::identity(1);

  MeshBuildReport report = create_mesh(env, policy, {{1.0}}, pushes, 0.5, stats);
  const Mesh& mesh = report.mesh;

  REQUIRE(mesh.size() == 4);  // positions 1..4
  check_closure_and_arity(mesh, 2);
  CHECK(report.states_explored == 4);
  CHECK(report.seed_boxes == 1);

  // ids follow discovery order: 1, 2, 3, 4
  for (int id = 0; id < 4; ++id)
    CHECK(mesh.representative_state(id) == StateVector{static_cast<double>(id + 1)});

  // position 4 (+) fails, (-) goes back to 3
  CHECK(mesh.entry(3).transitions == std::vector<int>{kFailureId, 2});
  // position 1 (+) goes to 2, (-) reflects onto itself
  CHECK(mesh.entry(0).transitions == std::vector<int>{1, 0});
  CHECK(report.failures_recorded == 1);

  OracleMesh oracle = brute_force_mesh(env, policy, {{1.0}}, pushes, 0.5, stats);
  check_against_oracle(mesh, oracle);
}

TEST_CASE("an always-failing environment meshes as seed boxes only") {
  DoomedEnv env;
  LinearPolicy policy(1, 1);
  DisturbanceSet pushes{{{0.0, 0.0, 0.01}, {1.0, 0.0, 0.01}, {2.0, 0.0, 0.01}}};

  MeshBuildReport report =
      create_mesh(env, policy, {{0.0}, {5.0}}, pushes, 1.0, NormalizationStats::identity(1));
  REQUIRE(report.mesh.size() == 2);
  for (int id = 0; id < 2; ++id)
    CHECK(report.mesh.entry(id).transitions ==
          std::vector<int>{kFailureId, kFailureId, kFailureId});
  CHECK(report.failures_recorded == 6);
}

TEST_CASE("fixture gait with a single zero push meshes to one self-transition") {
  SlipEnv env;
  LinearPolicy policy = testing::slip_fixture_policy();
  StateVector gait = testing::slip_period1_gait(env, policy);
  DisturbanceSet single{{{0.0, 0.0, 0.01}}};

  MeshBuildReport report =
      create_mesh(env, policy, {gait}, single, 0.05, policy.obs_stats());
  REQUIRE(report.mesh.size() == 1);
  CHECK(report.mesh.entry(0).transitions == std::vector<int>{0});
}

TEST_CASE("slip fixture mesh matches the brute-force oracle state for state") {
  SlipEnv env;
  LinearPolicy policy = testing::slip_fixture_policy();
  StateVector gait = testing::slip_period1_gait(env, policy);
  DisturbanceSet pushes = disturbance_grid(3, -10.0, 10.0, 0.01);
  const double box = 0.02;

  MeshBuildReport report =
      create_mesh(env, policy, {gait}, pushes, box, policy.obs_stats(), 100000, 4);
  check_closure_and_arity(report.mesh, 3);
  CHECK(report.mesh.size() > 10);

  OracleMesh oracle = brute_force_mesh(env, policy, {gait}, pushes, box, policy.obs_stats());
  check_against_oracle(report.mesh, oracle);
}

TEST_CASE("worker count does not change the mesh") {
  SlipEnv env;
  LinearPolicy policy = testing::slip_fixture_policy();
  StateVector gait = testing::slip_period1_gait(env, policy);
  DisturbanceSet pushes = disturbance_grid(5, -8.0, 8.0, 0.01);

  MeshBuildReport serial =
      create_mesh(env, policy, {gait}, pushes, 0.03, policy.obs_stats(), 100000, 1);
  MeshBuildReport parallel =
      create_mesh(env, policy, {gait}, pushes, 0.03, policy.obs_stats(), 100000, 8);
  CHECK(io::mesh_to_json(serial.mesh) == io::mesh_to_json(parallel.mesh));
}

TEST_CASE("state cap trips into a partial-mesh error") {
  Walk1dEnv env(50);
  LinearPolicy policy(1, 1);
  DisturbanceSet pushes{{{1.0, 0.0, 0.01}, {1.0, std::numbers::pi, 0.01}}};

  CHECK_THROWS_AS(
      create_mesh(env, policy, {{1.0}}, pushes, 0.5, NormalizationStats::identity(1), 10),
      MeshCapExceeded);
  try {
    create_mesh(env, policy, {{1.0}}, pushes, 0.5, NormalizationStats::identity(1), 10);
  } catch (const MeshCapExceeded& e) {
    REQUIRE(e.partial != nullptr);
    CHECK(e.partial->mesh.size() == 10);
  }
}

TEST_CASE("seed_states settles, skips failures, and honors settle_steps = 0") {
  SlipEnv env;
  LinearPolicy policy = testing::slip_fixture_policy();

  auto seeds = seed_states(env, policy, 10, 12, 42);
  CHECK(seeds.size() <= 10);
  CHECK(!seeds.empty());
  StateVector gait = testing::slip_period1_gait(env, policy);
  for (const auto& s : seeds)
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(s[i] - gait[i]) < 0.05);

  // settle_steps = 0 returns the perturbed initial conditions directly
  auto raw = seed_states(env, policy, 4, 0, 7);
  REQUIRE(raw.size() == 4);
  for (const auto& s : raw) {
    CHECK(std::abs(s[0] - env.params().apex_init) < 0.1);
    CHECK(!env.is_failure(s));
  }

  // zero init noise and a deterministic gait: all seeds identical -> one box
  SlipParams quiet = env.params();
  quiet.init_noise = 0.0;
  SlipEnv quiet_env(quiet);
  auto identical = seed_states(quiet_env, policy, 10, 3, 99);
  REQUIRE(identical.size() == 10);
  Mesh mesh(0.1, policy.obs_stats());
  for (const auto& s : identical) mesh.insert_or_get(s);
  CHECK(mesh.size() == 1);

  // an environment that fails every settling step yields the empty-seed error
  DoomedEnv doomed;
  CHECK_THROWS_AS(seed_states(doomed, policy, 3, 1, 0), EmptySeedError);
}
