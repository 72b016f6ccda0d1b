#include <doctest.h>

#include <cmath>
#include <set>

#include "reachmesh/env/pointsets.hpp"
#include "reachmesh/fracdim.hpp"
#include "reachmesh/rng.hpp"

using namespace reachmesh;

namespace {
const NormalizationStats kIdentity2 = NormalizationStats::identity(2);
}

TEST_CASE("box ladder generates geometric sizes and validates") {
  BoxLadder ladder{0.25, 2.0, 4};
  auto sizes = ladder.sizes();
  REQUIRE(sizes.size() == 4);
  CHECK(sizes[0] == 0.25);
  CHECK(sizes[3] == doctest::Approx(0.03125));

  CHECK_THROWS_AS((BoxLadder{0.0, 2.0, 4}.sizes()), std::invalid_argument);
  CHECK_THROWS_AS((BoxLadder{0.1, 1.0, 4}.sizes()), std::invalid_argument);
  CHECK_THROWS_AS((BoxLadder{0.1, 2.0, 1}.sizes()), std::invalid_argument);
}

TEST_CASE("a repeated point occupies one box at every scale") {
  std::vector<StateVector> points(17, StateVector{0.37, -0.91});
  auto counts = box_counts(points, {0.5, 2.0, 5}, kIdentity2);
  for (auto [d, n] : counts) CHECK(n == 1);
}

TEST_CASE("counts never increase as the ladder coarsens, on estimator inputs") {
  for (auto kind : {PointsetKind::line, PointsetKind::koch}) {
    auto points = fractal_pointset(kind, 6);
    auto counts = box_counts(points, {0.5, 1.7, 7}, kIdentity2);
    for (std::size_t i = 1; i < counts.size(); ++i)
      CHECK(counts[i].second >= counts[i - 1].second);  // finer boxes, more keys
  }
}

TEST_CASE("1025 uniform line points at box 1/32 occupy 33 boxes") {
  // Enumerated directly: keys round(32 * i / 1024) for i = 0..1024 hit every
  // integer in [0, 32].
  auto points = fractal_pointset(PointsetKind::line, 10);
  REQUIRE(points.size() == 1025);
  auto counts = box_counts(points, {1.0 / 32.0, 2.0, 2}, kIdentity2);
  CHECK(counts[0].second == 33);

  std::set<long long> brute;
  for (const auto& p : points) brute.insert(std::llround(p[0] * 32.0));
  CHECK(brute.size() == 33);
}

TEST_CASE("box dimension recovers the analytic dimensions") {
  BoxLadder ladder{0.25, 2.0, 6};

  auto line = box_counts(fractal_pointset(PointsetKind::line, 12), ladder, kIdentity2);
  DimensionFit line_fit = box_dimension(line);
  CHECK(line_fit.dimension == doctest::Approx(1.0).epsilon(0.05));

  auto square = box_counts(fractal_pointset(PointsetKind::filled_square, 8), ladder, kIdentity2);
  DimensionFit square_fit = box_dimension(square);
  CHECK(square_fit.dimension == doctest::Approx(2.0).epsilon(0.05));

  auto koch = box_counts(fractal_pointset(PointsetKind::koch, 8), ladder, kIdentity2);
  DimensionFit koch_fit = box_dimension(koch);
  CHECK(koch_fit.dimension == doctest::Approx(std::log(4.0) / std::log(3.0)).epsilon(0.06));
}

TEST_CASE("flat count profiles fit dimension zero exactly") {
  std::vector<std::pair<double, std::size_t>> flat{{0.4, 7}, {0.2, 7}, {0.1, 7}};
  DimensionFit fit = box_dimension(flat);
  CHECK(fit.dimension == 0.0);
  CHECK(fit.r_squared == 1.0);

  CHECK_THROWS_AS(box_dimension({{0.25, 10}}), std::invalid_argument);
  CHECK_THROWS_AS(box_dimension({{0.25, 10}, {0.25, 12}}), std::invalid_argument);
}

TEST_CASE("fitted dimension stays within the embedding bound") {
  rng::Engine eng(31);
  std::vector<StateVector> cloud;
  for (int i = 0; i < 5000; ++i) cloud.push_back({eng.normal(), eng.normal()});
  DimensionFit fit = box_dimension(box_counts(cloud, {1.0, 2.0, 5}, kIdentity2));
  CHECK(fit.dimension >= 0.0);
  CHECK(fit.dimension <= 2.0 + 0.2);
}

TEST_CASE("whitening cancels global rescaling of points and stats") {
  rng::Engine eng(8);
  std::vector<StateVector> points;
  for (int i = 0; i < 300; ++i) points.push_back({eng.normal(1.0, 2.0), eng.normal(-3.0, 0.5)});

  NormalizationStats stats{{1.0, -3.0}, {2.0, 0.5}};
  const double scale = 37.5;
  std::vector<StateVector> scaled;
  for (const auto& p : points) scaled.push_back({p[0] * scale, p[1] * scale});
  NormalizationStats scaled_stats{{1.0 * scale, -3.0 * scale}, {2.0 * scale, 0.5 * scale}};

  BoxLadder ladder{0.3, 1.5, 6};
  auto a = box_counts(points, ladder, stats);
  auto b = box_counts(scaled, ladder, scaled_stats);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].second == b[i].second);
}

TEST_CASE("adding points never decreases any count") {
  rng::Engine eng(12);
  std::vector<StateVector> base;
  for (int i = 0; i < 200; ++i) base.push_back({eng.normal(), eng.normal()});
  std::vector<StateVector> extended = base;
  for (int i = 0; i < 100; ++i) extended.push_back({eng.normal(), eng.normal()});

  BoxLadder ladder{0.5, 2.0, 5};
  auto a = box_counts(base, ladder, kIdentity2);
  auto b = box_counts(extended, ladder, kIdentity2);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(b[i].second >= a[i].second);
}

TEST_CASE("trajectory dimension: clamping, a line, and a filled grid") {
  NormalizationStats identity = NormalizationStats::identity(2);

  // one box at both scales: raw estimate 0, clamped to 1
  std::vector<StateVector> still(5, StateVector{0.0, 0.0});
  CHECK(trajectory_mesh_dim(still, identity, 0.1, 1.5) == 1.0);

  // dense straight line ~ dimension 1
  std::vector<StateVector> line;
  for (int i = 0; i <= 4000; ++i) line.push_back({static_cast<double>(i) / 4000.0, 0.0});
  CHECK(trajectory_mesh_dim(line, identity, 0.05, 2.0) == doctest::Approx(1.0).epsilon(0.05));

  // a trajectory filling a 2-D grid at both scales ~ dimension 2
  std::vector<StateVector> grid;
  for (int i = 0; i <= 80; ++i)
    for (int j = 0; j <= 80; ++j) grid.push_back({i / 80.0, j / 80.0});
  double dm = trajectory_mesh_dim(grid, identity, 0.1, 2.0);
  CHECK(dm == doctest::Approx(2.0).epsilon(0.05));

  CHECK_THROWS_AS(trajectory_mesh_dim({{0.0, 0.0}}, identity, 0.1, 1.5), std::invalid_argument);
}

TEST_CASE("two-scale estimate tracks the full fit on power-law sets") {
  auto koch = fractal_pointset(PointsetKind::koch, 8);
  auto counts = box_counts(koch, {0.25, 1.5, 6}, kIdentity2);
  DimensionFit fit = box_dimension(counts);
  double two_scale = trajectory_mesh_dim(koch, kIdentity2, 0.25, 1.5);
  CHECK(std::abs(two_scale - fit.dimension) < 0.1);
}
