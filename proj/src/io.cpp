#include "reachmesh/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace reachmesh::io {

using nlohmann::json;

std::string format_double(double value) {
  char buf[40];
  int len = std::snprintf(buf, sizeof(buf), "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(len));
}

std::string mesh_to_json(const Mesh& mesh) {
  json doc;
  doc["box_size"] = mesh.box_size();
  doc["mean"] = mesh.stats().mean;
  doc["std"] = mesh.stats().std;
  json entries = json::array();
  for (int id = 0; id < mesh.size(); ++id) {
    const MeshEntry& entry = mesh.entry(id);
    json e;
    e["id"] = entry.id;
    e["lattice"] = mesh.key_of(id).lattice;
    e["representative"] = entry.representative;
    e["transitions"] = entry.transitions;
    entries.push_back(std::move(e));
  }
  doc["entries"] = std::move(entries);
  return doc.dump(2);
}

Mesh mesh_from_json(const std::string& text) {
  json doc = json::parse(text);
  NormalizationStats stats{doc.at("mean").get<std::vector<double>>(),
                           doc.at("std").get<std::vector<double>>()};
  Mesh mesh(doc.at("box_size").get<double>(), std::move(stats));
  for (const json& e : doc.at("entries")) {
    MeshKey key{e.at("lattice").get<std::vector<std::int64_t>>()};
    mesh.restore_entry(e.at("id").get<int>(), std::move(key),
                       e.at("representative").get<StateVector>(),
                       e.at("transitions").get<std::vector<int>>());
  }
  return mesh;
}

void save_mesh(const Mesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << mesh_to_json(mesh) << '\n';
}

Mesh load_mesh(const std::filesystem::path& path) { return mesh_from_json(read_text(path)); }

std::string report_to_json(const MeshBuildReport& report) {
  json doc;
  doc["states_explored"] = report.states_explored;
  doc["failures_recorded"] = report.failures_recorded;
  doc["frontier_peak"] = report.frontier_peak;
  doc["wall_time"] = report.wall_time;
  doc["seed_boxes"] = report.seed_boxes;
  return doc.dump(2);
}

std::string matrix_to_coo(const TransitionMatrix& matrix) {
  std::ostringstream out;
  out << matrix.size() << ' ' << matrix.size() << ' ' << matrix.nnz() << '\n';
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    auto cols = matrix.row_cols(i);
    auto vals = matrix.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k)
      out << i << ' ' << cols[k] << ' ' << format_double(vals[k]) << '\n';
  }
  return out.str();
}

TransitionMatrix matrix_from_coo(const std::string& text) {
  std::istringstream in(text);
  std::size_t rows = 0, cols = 0, nnz = 0;
  if (!(in >> rows >> cols >> nnz) || rows != cols || rows == 0)
    throw std::invalid_argument("matrix_from_coo: bad header");
  std::vector<std::vector<TransitionMatrix::Entry>> entries(rows);
  for (std::size_t k = 0; k < nnz; ++k) {
    std::size_t r = 0;
    int c = 0;
    double v = 0.0;
    if (!(in >> r >> c >> v)) throw std::invalid_argument("matrix_from_coo: truncated triples");
    if (r >= rows) throw std::invalid_argument("matrix_from_coo: row index out of range");
    entries[r].push_back({c, v});
  }
  return TransitionMatrix(std::move(entries));
}

std::string checkpoint_to_json(const Checkpoint& ckpt) {
  const LinearPolicy& p = ckpt.policy;
  json weights = json::array();
  for (std::size_t r = 0; r < p.action_dim(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < p.obs_dim(); ++c) row.push_back(p.weight(r, c));
    weights.push_back(std::move(row));
  }
  json doc;
  doc["weights"] = std::move(weights);
  doc["obs_mean"] = p.obs_stats().mean;
  doc["obs_std"] = p.obs_stats().std;
  doc["obs_count"] = ckpt.obs_count;
  doc["epoch"] = ckpt.epoch;
  doc["objective"] = ckpt.objective;
  json cfg;
  cfg["step_size"] = ckpt.config.step_size;
  cfg["exploration_std"] = ckpt.config.exploration_std;
  cfg["directions"] = ckpt.config.directions;
  cfg["top_directions"] = ckpt.config.top_directions;
  cfg["episode_steps"] = ckpt.config.episode_steps;
  cfg["epochs"] = ckpt.config.epochs;
  cfg["seed"] = ckpt.config.seed;
  cfg["action_noise_std"] = ckpt.config.action_noise_std;
  cfg["obs_noise_std"] = ckpt.config.obs_noise_std;
  cfg["dm_d0"] = ckpt.config.dm_d0;
  cfg["dm_factor"] = ckpt.config.dm_factor;
  doc["config"] = std::move(cfg);
  return doc.dump(2);
}

Checkpoint checkpoint_from_json(const std::string& text) {
  json doc = json::parse(text);
  const json& weights = doc.at("weights");
  std::size_t action_dim = weights.size();
  if (action_dim == 0) throw std::invalid_argument("checkpoint: empty weight matrix");
  std::size_t obs_dim = weights.at(0).size();

  Checkpoint ckpt;
  ckpt.policy = LinearPolicy(action_dim, obs_dim);
  for (std::size_t r = 0; r < action_dim; ++r) {
    const json& row = weights.at(r);
    if (row.size() != obs_dim) throw std::invalid_argument("checkpoint: ragged weight matrix");
    for (std::size_t c = 0; c < obs_dim; ++c) ckpt.policy.weight(r, c) = row.at(c).get<double>();
  }
  ckpt.policy.set_obs_stats({doc.at("obs_mean").get<std::vector<double>>(),
                             doc.at("obs_std").get<std::vector<double>>()});
  ckpt.obs_count = doc.value("obs_count", std::size_t{0});
  ckpt.epoch = doc.value("epoch", 0);
  ckpt.objective = doc.value("objective", std::string("standard"));
  if (doc.contains("config")) {
    const json& cfg = doc["config"];
    ArsConfig& c = ckpt.config;
    c.step_size = cfg.value("step_size", c.step_size);
    c.exploration_std = cfg.value("exploration_std", c.exploration_std);
    c.directions = cfg.value("directions", c.directions);
    c.top_directions = cfg.value("top_directions", c.top_directions);
    c.episode_steps = cfg.value("episode_steps", c.episode_steps);
    c.epochs = cfg.value("epochs", c.epochs);
    c.seed = cfg.value("seed", c.seed);
    c.action_noise_std = cfg.value("action_noise_std", c.action_noise_std);
    c.obs_noise_std = cfg.value("obs_noise_std", c.obs_noise_std);
    c.dm_d0 = cfg.value("dm_d0", c.dm_d0);
    c.dm_factor = cfg.value("dm_factor", c.dm_factor);
  }
  return ckpt;
}

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << checkpoint_to_json(ckpt) << '\n';
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  return checkpoint_from_json(read_text(path));
}

std::string stats_to_json(const RolloutStats& stats) {
  json doc;
  doc["trials"] = stats.trials;
  if (stats.valid) {
    doc["mean_steps"] = stats.mean_steps;
    doc["std_steps"] = stats.std_steps;
  } else {
    doc["mean_steps"] = nullptr;
    doc["std_steps"] = nullptr;
  }
  doc["censored"] = stats.censored;
  doc["valid"] = stats.valid;
  return doc.dump(2);
}

std::string dimension_fit_to_json(const DimensionFit& fit) {
  json doc;
  doc["dimension"] = fit.dimension;
  doc["r_squared"] = fit.r_squared;
  return doc.dump(2);
}

std::string counts_to_csv(const std::vector<std::pair<double, std::size_t>>& counts) {
  std::ostringstream out;
  out << "box_size,count\n";
  for (auto [d, n] : counts) out << format_double(d) << ',' << n << '\n';
  return out.str();
}

std::string cdf_to_csv(const std::vector<std::pair<double, double>>& cdf) {
  std::ostringstream out;
  out << "state_fraction,mass_fraction\n";
  for (auto [x, y] : cdf) out << format_double(x) << ',' << format_double(y) << '\n';
  return out.str();
}

std::string sparsity_to_csv(const std::vector<std::pair<int, int>>& coords) {
  std::ostringstream out;
  out << "row,col\n";
  for (auto [r, c] : coords) out << r << ',' << c << '\n';
  return out.str();
}

std::string pca_to_csv(const PcaProjection& projection) {
  std::ostringstream out;
  out << "id";
  for (std::size_t c = 0; c < projection.components.size(); ++c) out << ",pc" << c + 1;
  out << ",one_step_failure\n";
  for (std::size_t i = 0; i < projection.projected.size(); ++i) {
    out << i;
    for (double v : projection.projected[i]) out << ',' << format_double(v);
    out << ',' << (projection.failure_flag[i] ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string train_log_to_csv(const std::vector<EpochLog>& log) {
  std::ostringstream out;
  out << "epoch,mean_return,mean_fractal_return,dm_best,update_skipped\n";
  for (const EpochLog& e : log) {
    out << e.epoch << ',' << format_double(e.mean_return) << ','
        << format_double(e.mean_fractal_return) << ',' << format_double(e.dm_best) << ','
        << (e.update_skipped ? 1 : 0) << '\n';
  }
  return out.str();
}

void write_text(const std::filesystem::path& path, const std::string& text, bool force) {
  if (!force && std::filesystem::exists(path))
    throw std::runtime_error("refusing to overwrite " + path.string() +
                             " (pass --force to allow)");
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace reachmesh::io
