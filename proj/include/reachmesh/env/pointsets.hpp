#pragma once

#include <vector>

#include "reachmesh/types.hpp"

namespace reachmesh {

/// Planar point sets with known box-counting dimension, used to validate the
/// dimension estimator: a line (D = 1), a filled square (D = 2), and the
/// Koch curve (D = log 4 / log 3).
enum class PointsetKind { line, filled_square, koch };

/// line: 2^level + 1 points on the unit segment; filled_square:
/// (2^level + 1)^2 grid on the unit square; koch: the 4^level + 1 vertices
/// of the level-th Koch iterate. All embedded in 2-D.
std::vector<StateVector> fractal_pointset(PointsetKind kind, int level);

}  // namespace reachmesh
