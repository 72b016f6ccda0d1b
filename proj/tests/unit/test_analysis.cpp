#include <doctest.h>

#include <cmath>

#include "reachmesh/pca.hpp"
#include "reachmesh/rng.hpp"

using namespace reachmesh;

namespace {

Mesh mesh_from_points(const std::vector<StateVector>& points, double box = 1e-6) {
  Mesh mesh(box, NormalizationStats::identity(points.front().size()));
  for (const auto& p : points) {
    auto [id, fresh] = mesh.insert_or_get(p);
    if (fresh) mesh.entry(id).transitions = {id};  // self-loop placeholder
  }
  return mesh;
}

}  // namespace

TEST_CASE("a line embedded in 4-D projects onto one dominant axis") {
  rng::Engine eng(2);
  std::vector<StateVector> points;
  for (int i = 0; i < 300; ++i) {
    double t = eng.uniform(-2.0, 2.0);
    points.push_back({0.5 * t, -1.0 * t, 2.0 * t, 0.25 * t});
  }
  Mesh mesh = mesh_from_points(points);
  PcaProjection projection = pca_project(mesh, 2);

  CHECK(projection.explained_variance[0] >= 0.999);
  CHECK(projection.explained_variance[0] >= projection.explained_variance[1]);
  CHECK(projection.explained_variance[1] <= 1e-6);
}

TEST_CASE("an isotropic cloud splits variance evenly") {
  rng::Engine eng(14);
  std::vector<StateVector> points;
  for (int i = 0; i < 10000; ++i) points.push_back({eng.normal(), eng.normal(), eng.normal()});
  Mesh mesh = mesh_from_points(points);
  PcaProjection projection = pca_project(mesh, 3);

  double total = 0.0;
  for (double v : projection.explained_variance) {
    CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(0.15));
    total += v;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("projection output is deterministic and sign-fixed") {
  rng::Engine eng(5);
  std::vector<StateVector> points;
  for (int i = 0; i < 50; ++i) points.push_back({eng.normal(), eng.normal(2.0, 0.2)});
  Mesh a = mesh_from_points(points);
  Mesh b = mesh_from_points(points);

  PcaProjection pa = pca_project(a, 2);
  PcaProjection pb = pca_project(b, 2);
  CHECK(pa.components == pb.components);
  CHECK(pa.projected == pb.projected);

  // sign convention: each axis's largest-magnitude entry is positive
  for (const auto& axis : pa.components) {
    double best = 0.0;
    for (double v : axis)
      if (std::abs(v) > std::abs(best)) best = v;
    CHECK(best > 0.0);
  }
}

TEST_CASE("failure flags mirror one-step transitions into failure") {
  Mesh mesh(0.5, NormalizationStats::identity(2));
  for (int i = 0; i < 4; ++i) {
    auto [id, fresh] = mesh.insert_or_get({static_cast<double>(i), 0.0});
    mesh.entry(id).transitions = (i % 2 == 0) ? std::vector<int>{kFailureId, id}
                                              : std::vector<int>{id, id};
  }
  PcaProjection projection = pca_project(mesh, 1);
  CHECK(projection.failure_flag == std::vector<bool>{true, false, true, false});
}

TEST_CASE("pca rejects invalid component counts") {
  Mesh mesh = mesh_from_points({{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}});
  CHECK_THROWS_AS(pca_project(mesh, 3), std::invalid_argument);  // k > dimension
  CHECK_THROWS_AS(pca_project(mesh, 0), std::invalid_argument);

  Mesh tiny = mesh_from_points({{1.0, 0.0}});
  CHECK_THROWS_AS(pca_project(tiny, 2), std::invalid_argument);  // fewer states than k
}
