#pragma once

#include <vector>

#include "reachmesh/mesh.hpp"

namespace reachmesh {

struct PcaProjection {
  std::vector<std::vector<double>> components;  // k rows of length n
  std::vector<double> explained_variance;       // fraction per axis, nonincreasing
  std::vector<std::vector<double>> projected;   // one k-vector per mesh state
  std::vector<bool> failure_flag;  // true iff the state can fail in one step
};

/// Principal axes of the mesh's representative states. Axis signs follow a
/// fixed convention (largest-magnitude component positive) so projections
/// compare across runs.
PcaProjection pca_project(const Mesh& mesh, int k);

}  // namespace reachmesh
