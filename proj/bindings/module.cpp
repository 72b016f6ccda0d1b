#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "reachmesh/disturbance.hpp"
#include "reachmesh/env/pointsets.hpp"
#include "reachmesh/env/quadratic.hpp"
#include "reachmesh/env/slip.hpp"
#include "reachmesh/env/walk1d.hpp"
#include "reachmesh/fracdim.hpp"
#include "reachmesh/io.hpp"
#include "reachmesh/markov.hpp"
#include "reachmesh/mesh.hpp"
#include "reachmesh/pca.hpp"
#include "reachmesh/policy.hpp"
#include "reachmesh/reachability.hpp"
#include "reachmesh/rollout.hpp"
#include "reachmesh/training.hpp"

namespace py = pybind11;
using namespace reachmesh;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Reachable-set meshing, Markov-chain stability analysis, box-counting "
            "dimension estimation, and ARS policy training.";

  m.attr("FAILURE_ID") = kFailureId;

  py::register_exception<DivergenceError>(m, "DivergenceError");
  py::register_exception<MeshCapExceeded>(m, "MeshCapError");
  py::register_exception<EmptySeedError>(m, "EmptySeedError");
  py::register_exception<ConvergenceError>(m, "ConvergenceError");
  py::register_exception<UnsupportedSpectrumError>(m, "UnsupportedSpectrumError");
  py::register_exception<RecurrentClassError>(m, "RecurrentClassError");

  py::class_<NormalizationStats>(m, "NormalizationStats")
      .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("mean"), py::arg("std"))
      .def_static("identity", &NormalizationStats::identity, py::arg("dim"))
      .def_readwrite("mean", &NormalizationStats::mean)
      .def_readwrite("std", &NormalizationStats::std);

  py::class_<MeshKey>(m, "MeshKey")
      .def_readonly("lattice", &MeshKey::lattice)
      .def("__eq__", [](const MeshKey& a, const MeshKey& b) { return a == b; });

  m.def("compute_key", &compute_key, py::arg("state"), py::arg("stats"), py::arg("box_size"));

  py::class_<MeshEntry>(m, "MeshEntry")
      .def_readonly("id", &MeshEntry::id)
      .def_readonly("representative", &MeshEntry::representative)
      .def_readonly("transitions", &MeshEntry::transitions);

  py::class_<Mesh>(m, "Mesh")
      .def(py::init<double, NormalizationStats>(), py::arg("box_size"), py::arg("stats"))
      .def("insert_or_get", &Mesh::insert_or_get, py::arg("state"))
      .def("representative_state", &Mesh::representative_state, py::arg("id"))
      .def("entry", py::overload_cast<int>(&Mesh::entry, py::const_),
           py::return_value_policy::reference_internal, py::arg("id"))
      .def("key_of", &Mesh::key_of, py::arg("id"))
      .def("__len__", &Mesh::size)
      .def_property_readonly("box_size", &Mesh::box_size)
      .def_property_readonly("stats", &Mesh::stats);

  py::class_<Disturbance>(m, "Disturbance")
      .def(py::init([](double magnitude, double angle, double duration) {
             return Disturbance{magnitude, angle, duration};
           }),
           py::arg("magnitude") = 0.0, py::arg("angle") = 0.0, py::arg("duration") = 0.01)
      .def_readwrite("magnitude", &Disturbance::magnitude)
      .def_readwrite("angle", &Disturbance::angle)
      .def_readwrite("duration", &Disturbance::duration);

  py::class_<DisturbanceSet>(m, "DisturbanceSet")
      .def(py::init([](std::vector<Disturbance> pushes) {
             return DisturbanceSet{std::move(pushes)};
           }),
           py::arg("pushes"))
      .def_readonly("pushes", &DisturbanceSet::pushes)
      .def("__len__", &DisturbanceSet::size);

  m.def("disturbance_grid", &disturbance_grid, py::arg("count"), py::arg("f_min"),
        py::arg("f_max"), py::arg("duration") = 0.01);

  py::class_<DisturbanceSampler>(m, "DisturbanceSampler")
      .def(py::init([](double mag_min, double mag_max, double duration) {
             DisturbanceSampler s{mag_min, mag_max, duration};
             s.validate();
             return s;
           }),
           py::arg("mag_min"), py::arg("mag_max"), py::arg("duration") = 0.01)
      .def_readwrite("mag_min", &DisturbanceSampler::mag_min)
      .def_readwrite("mag_max", &DisturbanceSampler::mag_max)
      .def_readwrite("duration", &DisturbanceSampler::duration);

  py::class_<rng::Engine>(m, "RngEngine")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("uniform", py::overload_cast<>(&rng::Engine::uniform))
      .def("normal", py::overload_cast<>(&rng::Engine::normal));

  m.def("derive_seed", [](std::uint64_t master, const std::vector<std::uint64_t>& path) {
    return rng::derive(master, std::span<const std::uint64_t>(path));
  });

  m.def("sample_disturbance", &sample_disturbance, py::arg("sampler"), py::arg("engine"));

  py::class_<SectionOutcome>(m, "SectionOutcome")
      .def_readonly("failed", &SectionOutcome::failed)
      .def_readonly("state", &SectionOutcome::state)
      .def_readonly("reward", &SectionOutcome::reward);

  py::class_<Environment>(m, "Environment")
      .def_property_readonly("state_dim", &Environment::state_dim)
      .def_property_readonly("action_dim", &Environment::action_dim)
      .def("nominal_init", &Environment::nominal_init)
      .def("is_failure", &Environment::is_failure, py::arg("state"))
      .def(
          "section_step",
          [](const Environment& env, const StateVector& state, const LinearPolicy& policy,
             const Disturbance& push) { return env.section_step(state, policy, push); },
          py::arg("state"), py::arg("policy"), py::arg("push"));

  py::class_<SlipParams>(m, "SlipParams")
      .def(py::init<>())
      .def_readwrite("mass", &SlipParams::mass)
      .def_readwrite("gravity", &SlipParams::gravity)
      .def_readwrite("stiffness", &SlipParams::stiffness)
      .def_readwrite("rest_length", &SlipParams::rest_length)
      .def_readwrite("touchdown_angle", &SlipParams::touchdown_angle)
      .def_readwrite("angle_scale", &SlipParams::angle_scale)
      .def_readwrite("angle_limit", &SlipParams::angle_limit)
      .def_readwrite("thrust_scale", &SlipParams::thrust_scale)
      .def_readwrite("thrust_limit", &SlipParams::thrust_limit)
      .def_readwrite("action_penalty", &SlipParams::action_penalty)
      .def_readwrite("h_fail", &SlipParams::h_fail)
      .def_readwrite("contact_height", &SlipParams::contact_height)
      .def_readwrite("min_leg_ratio", &SlipParams::min_leg_ratio)
      .def_readwrite("apex_init", &SlipParams::apex_init)
      .def_readwrite("speed_init", &SlipParams::speed_init)
      .def_readwrite("charge_init", &SlipParams::charge_init)
      .def_readwrite("init_noise", &SlipParams::init_noise)
      .def_readwrite("dt", &SlipParams::dt)
      .def_readwrite("event_tol", &SlipParams::event_tol)
      .def_readwrite("max_steps", &SlipParams::max_steps)
      .def_readwrite("max_phases", &SlipParams::max_phases);

  py::class_<SlipEnv, Environment>(m, "SlipEnv")
      .def(py::init<SlipParams>(), py::arg("params") = SlipParams{})
      .def_property_readonly("params", &SlipEnv::params);

  py::class_<Walk1dEnv, Environment>(m, "Walk1dEnv")
      .def(py::init<int, double>(), py::arg("boundary"), py::arg("start") = 1.0)
      .def_property_readonly("boundary", &Walk1dEnv::boundary);

  py::class_<QuadraticEnv, Environment>(m, "QuadraticEnv")
      .def(py::init<double, double, double>(), py::arg("peak_reward") = 10.0,
           py::arg("nominal") = 1.0, py::arg("init_noise") = 0.1)
      .def_property_readonly("peak_reward", &QuadraticEnv::peak_reward);

  py::enum_<PointsetKind>(m, "PointsetKind")
      .value("line", PointsetKind::line)
      .value("filled_square", PointsetKind::filled_square)
      .value("koch", PointsetKind::koch);

  m.def("fractal_pointset", &fractal_pointset, py::arg("kind"), py::arg("level"));

  py::class_<LinearPolicy>(m, "LinearPolicy")
      .def(py::init<std::size_t, std::size_t>(), py::arg("action_dim"), py::arg("obs_dim"))
      .def_property_readonly("action_dim", &LinearPolicy::action_dim)
      .def_property_readonly("obs_dim", &LinearPolicy::obs_dim)
      .def_property(
          "weights", [](const LinearPolicy& p) { return p.weights(); },
          [](LinearPolicy& p, std::vector<double> w) {
            if (w.size() != p.weights().size())
              throw std::invalid_argument("weights size mismatch");
            p.weights() = std::move(w);
          })
      .def("set_weight",
           [](LinearPolicy& p, std::size_t row, std::size_t col, double v) {
             p.weight(row, col) = v;
           })
      .def_property_readonly("obs_stats", &LinearPolicy::obs_stats)
      .def("set_obs_stats", &LinearPolicy::set_obs_stats, py::arg("stats"))
      .def("act", &LinearPolicy::act, py::arg("obs"));

  py::class_<MeshBuildReport>(m, "MeshBuildReport")
      .def_readonly("states_explored", &MeshBuildReport::states_explored)
      .def_readonly("failures_recorded", &MeshBuildReport::failures_recorded)
      .def_readonly("frontier_peak", &MeshBuildReport::frontier_peak)
      .def_readonly("wall_time", &MeshBuildReport::wall_time)
      .def_readonly("seed_boxes", &MeshBuildReport::seed_boxes)
      .def_property_readonly(
          "mesh", [](MeshBuildReport& r) -> Mesh& { return r.mesh; },
          py::return_value_policy::reference_internal);

  m.def("seed_states", &seed_states, py::arg("env"), py::arg("policy"), py::arg("n_init"),
        py::arg("settle_steps"), py::arg("seed"),
        py::call_guard<py::gil_scoped_release>());

  m.def("create_mesh", &create_mesh, py::arg("env"), py::arg("policy"),
        py::arg("initial_states"), py::arg("disturbances"), py::arg("box_size"), py::arg("stats"),
        py::arg("max_states") = 1000000, py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());

  py::class_<TransitionMatrix>(m, "TransitionMatrix")
      .def("__len__", &TransitionMatrix::size)
      .def_property_readonly("nnz", &TransitionMatrix::nnz)
      .def("row",
           [](const TransitionMatrix& t, std::size_t i) {
             std::vector<std::pair<int, double>> row;
             auto cols = t.row_cols(i);
             auto vals = t.row_values(i);
             for (std::size_t k = 0; k < cols.size(); ++k) row.emplace_back(cols[k], vals[k]);
             return row;
           },
           py::arg("row"))
      .def("validate", &TransitionMatrix::validate);

  m.def("build_transition_matrix", &build_transition_matrix, py::arg("mesh"));

  py::class_<SpectralResult>(m, "SpectralResult")
      .def_readonly("lambda2", &SpectralResult::lambda2)
      .def_readonly("iterations", &SpectralResult::iterations)
      .def_readonly("residual", &SpectralResult::residual);

  m.def("lambda2", &lambda2, py::arg("matrix"), py::arg("tol") = 1e-10,
        py::arg("max_iters") = 100000, py::call_guard<py::gil_scoped_release>());
  m.def("mfpt_eigen", &mfpt_eigen, py::arg("lambda2"));
  m.def("mfpt_exact", &mfpt_exact, py::arg("matrix"), py::arg("start"));
  m.def("transition_mass_cdf", &transition_mass_cdf, py::arg("matrix"));
  m.def("sparsity_pattern", &sparsity_pattern, py::arg("matrix"));

  py::class_<BoxLadder>(m, "BoxLadder")
      .def(py::init([](double d0, double factor, int levels) {
             BoxLadder l{d0, factor, levels};
             l.validate();
             return l;
           }),
           py::arg("d0") = 1e-2, py::arg("factor") = 1.5, py::arg("levels") = 6)
      .def_readwrite("d0", &BoxLadder::d0)
      .def_readwrite("factor", &BoxLadder::factor)
      .def_readwrite("levels", &BoxLadder::levels)
      .def("sizes", &BoxLadder::sizes);

  py::class_<DimensionFit>(m, "DimensionFit")
      .def_readonly("dimension", &DimensionFit::dimension)
      .def_readonly("counts", &DimensionFit::counts)
      .def_readonly("r_squared", &DimensionFit::r_squared);

  m.def("box_counts", &box_counts, py::arg("points"), py::arg("ladder"), py::arg("stats"),
        py::call_guard<py::gil_scoped_release>());
  m.def("box_dimension", &box_dimension, py::arg("counts"));
  m.def("trajectory_mesh_dim", &trajectory_mesh_dim, py::arg("trajectory"), py::arg("stats"),
        py::arg("d0") = 1e-2, py::arg("f") = 1.5);

  py::class_<RolloutStats>(m, "RolloutStats")
      .def_readonly("trials", &RolloutStats::trials)
      .def_readonly("mean_steps", &RolloutStats::mean_steps)
      .def_readonly("std_steps", &RolloutStats::std_steps)
      .def_readonly("censored", &RolloutStats::censored)
      .def_readonly("valid", &RolloutStats::valid);

  m.def(
      "rollout_to_failure",
      [](const Environment& env, const LinearPolicy& policy, const DisturbanceSampler& sampler,
         const StateVector& start, long max_steps, rng::Engine& engine) -> py::object {
        auto steps = rollout_to_failure(env, policy, sampler, start, max_steps, engine);
        if (steps) return py::int_(*steps);
        return py::none();
      },
      py::arg("env"), py::arg("policy"), py::arg("sampler"), py::arg("start"),
      py::arg("max_steps"), py::arg("engine"));

  m.def(
      "mc_mfpt",
      [](const Environment& env, const LinearPolicy& policy, const DisturbanceSampler& sampler,
         const std::vector<StateVector>& starts, std::size_t trials, long max_steps,
         std::uint64_t seed, int threads) {
        py::gil_scoped_release release;
        return mc_mfpt(env, policy, sampler, starts, trials, max_steps, seed, threads);
      },
      py::arg("env"), py::arg("policy"), py::arg("sampler"), py::arg("starts"), py::arg("trials"),
      py::arg("max_steps"), py::arg("seed"), py::arg("threads") = 1);

  py::class_<ArsConfig>(m, "ArsConfig")
      .def(py::init<>())
      .def_readwrite("step_size", &ArsConfig::step_size)
      .def_readwrite("exploration_std", &ArsConfig::exploration_std)
      .def_readwrite("directions", &ArsConfig::directions)
      .def_readwrite("top_directions", &ArsConfig::top_directions)
      .def_readwrite("episode_steps", &ArsConfig::episode_steps)
      .def_readwrite("epochs", &ArsConfig::epochs)
      .def_readwrite("seed", &ArsConfig::seed)
      .def_readwrite("action_noise_std", &ArsConfig::action_noise_std)
      .def_readwrite("obs_noise_std", &ArsConfig::obs_noise_std)
      .def_readwrite("dm_d0", &ArsConfig::dm_d0)
      .def_readwrite("dm_factor", &ArsConfig::dm_factor)
      .def_readwrite("threads", &ArsConfig::threads);

  py::enum_<Objective>(m, "Objective")
      .value("standard", Objective::standard)
      .value("fractal", Objective::fractal);

  py::class_<EpisodeRecord>(m, "EpisodeRecord")
      .def_readonly("states", &EpisodeRecord::states)
      .def_readonly("episode_return", &EpisodeRecord::episode_return)
      .def_readonly("steps", &EpisodeRecord::steps);

  m.def(
      "evaluate_episode",
      [](const Environment& env, const LinearPolicy& policy, double action_noise_std,
         double obs_noise_std, std::uint64_t seed, int episode_steps) {
        rng::Engine engine(seed);
        return evaluate_episode(env, policy, action_noise_std, obs_noise_std, engine,
                                episode_steps);
      },
      py::arg("env"), py::arg("policy"), py::arg("action_noise_std"), py::arg("obs_noise_std"),
      py::arg("seed"), py::arg("episode_steps"));

  m.def("fractal_return", &fractal_return, py::arg("record"), py::arg("stats"), py::arg("d0"),
        py::arg("f"));

  py::class_<EpochLog>(m, "EpochLog")
      .def_readonly("epoch", &EpochLog::epoch)
      .def_readonly("mean_return", &EpochLog::mean_return)
      .def_readonly("mean_fractal_return", &EpochLog::mean_fractal_return)
      .def_readonly("dm_best", &EpochLog::dm_best)
      .def_readonly("update_skipped", &EpochLog::update_skipped);

  py::class_<TrainResult>(m, "TrainResult")
      .def_readonly("policy", &TrainResult::policy)
      .def_readonly("log", &TrainResult::log);

  m.def(
      "ars_train",
      [](const Environment& env, const ArsConfig& config, Objective objective,
         const LinearPolicy* init_policy) {
        py::gil_scoped_release release;
        return ars_train(env, config, objective, init_policy);
      },
      py::arg("env"), py::arg("config"), py::arg("objective") = Objective::standard,
      py::arg("init_policy") = nullptr);

  py::class_<PcaProjection>(m, "PcaProjection")
      .def_readonly("components", &PcaProjection::components)
      .def_readonly("explained_variance", &PcaProjection::explained_variance)
      .def_readonly("projected", &PcaProjection::projected)
      .def_readonly("failure_flag", &PcaProjection::failure_flag);

  m.def("pca_project", &pca_project, py::arg("mesh"), py::arg("k"));

  m.def("mesh_to_json", &io::mesh_to_json, py::arg("mesh"));
  m.def("mesh_from_json", &io::mesh_from_json, py::arg("text"));
}
