#include "reachmesh/fracdim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "reachmesh/mesh.hpp"

namespace reachmesh {

void BoxLadder::validate() const {
  if (!(d0 > 0.0)) throw std::invalid_argument("box ladder: d0 must be positive");
  if (!(factor > 1.0)) throw std::invalid_argument("box ladder: factor must exceed 1");
  if (levels < 2) throw std::invalid_argument("box ladder: at least 2 levels required");
}

std::vector<double> BoxLadder::sizes() const {
  validate();
  std::vector<double> out(static_cast<std::size_t>(levels));
  double d = d0;
  for (int j = 0; j < levels; ++j) {
    out[static_cast<std::size_t>(j)] = d;
    d /= factor;
  }
  return out;
}

std::vector<std::pair<double, std::size_t>> box_counts(const std::vector<StateVector>& points,
                                                       const BoxLadder& ladder,
                                                       const NormalizationStats& stats) {
  if (points.empty()) throw std::invalid_argument("box_counts: empty point set");
  stats.validate();

  std::vector<std::pair<double, std::size_t>> counts;
  for (double d : ladder.sizes()) {
    std::unordered_set<MeshKey, MeshKeyHash> keys;
    keys.reserve(points.size());
    for (const StateVector& p : points) keys.insert(compute_key(p, stats, d));
    counts.emplace_back(d, keys.size());
  }
  return counts;
}

DimensionFit box_dimension(const std::vector<std::pair<double, std::size_t>>& counts) {
  std::vector<double> xs, ys;
  for (auto [d, n] : counts) {
    if (!(d > 0.0)) throw std::invalid_argument("box_dimension: non-positive box size");
    if (n < 1) throw std::invalid_argument("box_dimension: zero box count");
    xs.push_back(std::log(1.0 / d));
    ys.push_back(std::log(static_cast<double>(n)));
  }
  double x_min = 0.0, x_max = 0.0;
  if (!xs.empty()) {
    x_min = *std::min_element(xs.begin(), xs.end());
    x_max = *std::max_element(xs.begin(), xs.end());
  }
  if (xs.size() < 2 || x_max - x_min < 1e-12)
    throw std::invalid_argument("box_dimension: need at least 2 distinct box sizes");

  std::size_t n = xs.size();
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = xs[i] - mean_x, dy = ys[i] - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }

  DimensionFit fit;
  fit.counts = counts;
  fit.dimension = sxy / sxx;
  if (syy == 0.0) {
    fit.r_squared = 1.0;  // all counts equal: a flat line fits exactly
  } else {
    double ss_res = syy - sxy * sxy / sxx;
    fit.r_squared = 1.0 - ss_res / syy;
  }
  return fit;
}

double trajectory_mesh_dim(const std::vector<StateVector>& trajectory,
                           const NormalizationStats& stats, double d0, double f) {
  if (trajectory.size() < 2)
    throw std::invalid_argument("trajectory_mesh_dim: trajectory needs at least 2 states");
  BoxLadder ladder{d0, f, 2};
  auto counts = box_counts(trajectory, ladder, stats);
  double coarse = static_cast<double>(counts[0].second);
  double fine = static_cast<double>(counts[1].second);
  double estimate = std::log(fine / coarse) / std::log(f);
  return std::max(1.0, estimate);
}

}  // namespace reachmesh
