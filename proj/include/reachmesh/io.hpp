#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "reachmesh/fracdim.hpp"
#include "reachmesh/markov.hpp"
#include "reachmesh/mesh.hpp"
#include "reachmesh/pca.hpp"
#include "reachmesh/policy.hpp"
#include "reachmesh/reachability.hpp"
#include "reachmesh/rollout.hpp"
#include "reachmesh/training.hpp"

namespace reachmesh::io {

/// Mesh document: {box_size, mean[], std[], entries[]}, each entry
/// {id, lattice[], representative[], transitions[]}; failure transitions are
/// encoded as -1. Doubles round-trip bit-exactly.
std::string mesh_to_json(const Mesh& mesh);
Mesh mesh_from_json(const std::string& text);

void save_mesh(const Mesh& mesh, const std::filesystem::path& path);
Mesh load_mesh(const std::filesystem::path& path);

std::string report_to_json(const MeshBuildReport& report);

/// Coordinate-list text: header "rows cols nnz", then one "row col prob"
/// triple per line.
std::string matrix_to_coo(const TransitionMatrix& matrix);
TransitionMatrix matrix_from_coo(const std::string& text);

/// Policy checkpoint: {weights, obs_mean, obs_std, obs_count, config, epoch}.
struct Checkpoint {
  LinearPolicy policy;
  std::size_t obs_count = 0;
  ArsConfig config;
  int epoch = 0;
  std::string objective = "standard";
};
std::string checkpoint_to_json(const Checkpoint& ckpt);
Checkpoint checkpoint_from_json(const std::string& text);
void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

std::string stats_to_json(const RolloutStats& stats);
std::string dimension_fit_to_json(const DimensionFit& fit);

std::string counts_to_csv(const std::vector<std::pair<double, std::size_t>>& counts);
std::string cdf_to_csv(const std::vector<std::pair<double, double>>& cdf);
std::string sparsity_to_csv(const std::vector<std::pair<int, int>>& coords);
std::string pca_to_csv(const PcaProjection& projection);
std::string train_log_to_csv(const std::vector<EpochLog>& log);

/// Full-precision decimal form that parses back to the same double.
std::string format_double(double value);

void write_text(const std::filesystem::path& path, const std::string& text, bool force);
std::string read_text(const std::filesystem::path& path);

}  // namespace reachmesh::io
