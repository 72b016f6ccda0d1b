#include "reachmesh/env/pointsets.hpp"

#include <cmath>
#include <stdexcept>

namespace reachmesh {

namespace {

constexpr long kPointCap = 1 << 24;

void koch_segment(double ax, double ay, double bx, double by, int level,
                  std::vector<StateVector>& out) {
  if (level == 0) {
    out.push_back({bx, by});
    return;
  }
  double dx = (bx - ax) / 3.0, dy = (by - ay) / 3.0;
  double p1x = ax + dx, p1y = ay + dy;
  double p3x = ax + 2.0 * dx, p3y = ay + 2.0 * dy;
  // Outward bump: rotate the middle third by +60 degrees.
  constexpr double c = 0.5, s = 0.86602540378443864676;
  double p2x = p1x + c * dx - s * dy;
  double p2y = p1y + s * dx + c * dy;
  koch_segment(ax, ay, p1x, p1y, level - 1, out);
  koch_segment(p1x, p1y, p2x, p2y, level - 1, out);
  koch_segment(p2x, p2y, p3x, p3y, level - 1, out);
  koch_segment(p3x, p3y, bx, by, level - 1, out);
}

}  // namespace

std::vector<StateVector> fractal_pointset(PointsetKind kind, int level) {
  if (level < 0) throw std::invalid_argument("fractal_pointset: level must be non-negative");

  std::vector<StateVector> points;
  switch (kind) {
    case PointsetKind::line: {
      if (level > 24) throw std::invalid_argument("fractal_pointset: level exceeds point cap");
      long n = (1L << level) + 1;
      points.reserve(static_cast<std::size_t>(n));
      for (long i = 0; i < n; ++i)
        points.push_back({static_cast<double>(i) / static_cast<double>(n - 1), 0.0});
      break;
    }
    case PointsetKind::filled_square: {
      if (level > 12) throw std::invalid_argument("fractal_pointset: level exceeds point cap");
      long side = (1L << level) + 1;
      points.reserve(static_cast<std::size_t>(side * side));
      for (long i = 0; i < side; ++i)
        for (long j = 0; j < side; ++j)
          points.push_back({static_cast<double>(i) / static_cast<double>(side - 1),
                            static_cast<double>(j) / static_cast<double>(side - 1)});
      break;
    }
    case PointsetKind::koch: {
      double count = std::pow(4.0, level) + 1.0;
      if (count > static_cast<double>(kPointCap))
        throw std::invalid_argument("fractal_pointset: level exceeds point cap");
      points.push_back({0.0, 0.0});
      koch_segment(0.0, 0.0, 1.0, 0.0, level, points);
      break;
    }
  }
  return points;
}

}  // namespace reachmesh
