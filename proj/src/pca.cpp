#include "reachmesh/pca.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace reachmesh {

PcaProjection pca_project(const Mesh& mesh, int k) {
  const int m = mesh.size();
  const int n = static_cast<int>(mesh.stats().dim());
  if (k < 1) throw std::invalid_argument("pca: k must be at least 1");
  if (k > n) throw std::invalid_argument("pca: k exceeds the state dimension");
  if (m < k) throw std::invalid_argument("pca: mesh has fewer states than components");

  Eigen::MatrixXd data(m, n);
  for (int i = 0; i < m; ++i) {
    const StateVector& s = mesh.representative_state(i);
    for (int j = 0; j < n; ++j) data(i, j) = s[static_cast<std::size_t>(j)];
  }
  Eigen::RowVectorXd mean = data.colwise().mean();
  data.rowwise() -= mean;

  Eigen::MatrixXd cov = data.transpose() * data / static_cast<double>(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) throw std::runtime_error("pca: eigendecomposition failed");

  // SelfAdjointEigenSolver sorts ascending; walk from the back.
  double trace = solver.eigenvalues().sum();
  PcaProjection out;
  Eigen::MatrixXd axes(n, k);
  for (int c = 0; c < k; ++c) {
    Eigen::VectorXd axis = solver.eigenvectors().col(n - 1 - c);
    int arg_max = 0;
    for (int j = 1; j < n; ++j)
      if (std::abs(axis(j)) > std::abs(axis(arg_max))) arg_max = j;
    if (axis(arg_max) < 0.0) axis = -axis;
    axes.col(c) = axis;
    out.components.emplace_back(axis.data(), axis.data() + n);
    double ev = solver.eigenvalues()(n - 1 - c);
    out.explained_variance.push_back(trace > 0.0 ? std::max(ev, 0.0) / trace : 0.0);
  }

  Eigen::MatrixXd proj = data * axes;
  out.projected.reserve(static_cast<std::size_t>(m));
  out.failure_flag.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    out.projected.emplace_back(k);
    for (int c = 0; c < k; ++c) out.projected.back()[static_cast<std::size_t>(c)] = proj(i, c);
    const auto& transitions = mesh.entry(i).transitions;
    out.failure_flag.push_back(std::find(transitions.begin(), transitions.end(), kFailureId) !=
                               transitions.end());
  }
  return out;
}

}  // namespace reachmesh
