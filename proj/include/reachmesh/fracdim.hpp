#pragma once

#include <utility>
#include <vector>

#include "reachmesh/normalization.hpp"
#include "reachmesh/types.hpp"

namespace reachmesh {

/// Geometric ladder of box sizes d0 * factor^-j for j = 0 .. levels-1.
struct BoxLadder {
  double d0 = 1e-2;
  double factor = 1.5;
  int levels = 6;

  void validate() const;
  std::vector<double> sizes() const;
};

struct DimensionFit {
  double dimension = 0.0;
  std::vector<std::pair<double, std::size_t>> counts;  // (box size, N)
  double r_squared = 0.0;
};

/// Number of distinct box keys the points occupy at every ladder size.
std::vector<std::pair<double, std::size_t>> box_counts(const std::vector<StateVector>& points,
                                                       const BoxLadder& ladder,
                                                       const NormalizationStats& stats);

/// Least-squares slope of log N against log(1/d). A flat count profile fits
/// dimension 0 exactly.
DimensionFit box_dimension(const std::vector<std::pair<double, std::size_t>>& counts);

/// Two-scale trajectory dimension log(N(d0/f) / N(d0)) / log f, clamped at
/// 1 so it can safely divide a return.
double trajectory_mesh_dim(const std::vector<StateVector>& trajectory,
                           const NormalizationStats& stats, double d0 = 1e-2, double f = 1.5);

}  // namespace reachmesh
