#include <doctest.h>

#include <cmath>
#include <set>
#include <unordered_set>

#include "reachmesh/mesh.hpp"
#include "reachmesh/rng.hpp"

using namespace reachmesh;

TEST_CASE("compute_key centers and unit offsets") {
  NormalizationStats stats{{0.4, -1.3, 2.0}, {0.7, 1.1, 3.0}};

  MeshKey at_mean = compute_key({0.4, -1.3, 2.0}, stats, 0.1);
  CHECK(at_mean.lattice == std::vector<std::int64_t>{0, 0, 0});

  // state[i] = mean[i] + std[i] * box_size -> one box along every axis
  StateVector offset(3);
  for (std::size_t i = 0; i < 3; ++i) offset[i] = stats.mean[i] + stats.std[i] * 0.1;
  CHECK(compute_key(offset, stats, 0.1).lattice == std::vector<std::int64_t>{1, 1, 1});
}

TEST_CASE("compute_key rounds halfway cases away from zero") {
  NormalizationStats stats = NormalizationStats::identity(2);
  MeshKey key = compute_key({0.05, -0.05}, stats, 0.1);
  CHECK(key.lattice == std::vector<std::int64_t>{1, -1});

  CHECK(compute_key({1.5, -2.5}, stats, 1.0).lattice == std::vector<std::int64_t>{2, -3});
}

TEST_CASE("compute_key rejects bad input") {
  NormalizationStats stats = NormalizationStats::identity(2);
  CHECK_THROWS_AS(compute_key({1.0, 2.0, 3.0}, stats, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(compute_key({1.0, std::nan("")}, stats, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(compute_key({1.0, 2.0}, stats, 0.0), std::invalid_argument);
}

TEST_CASE("compute_key is a pure function of its arguments") {
  NormalizationStats stats{{0.123, -9.5}, {0.31, 4.2}};
  rng::Engine eng(42);
  for (int i = 0; i < 200; ++i) {
    StateVector s{eng.normal(0.0, 5.0), eng.normal(0.0, 5.0)};
    CHECK(compute_key(s, stats, 0.07) == compute_key(s, stats, 0.07));
  }
}

TEST_CASE("quantization bound: box center within half a box per coordinate") {
  NormalizationStats stats{{0.5, -2.0}, {1.5, 0.25}};
  const double box = 0.3;
  rng::Engine eng(7);
  for (int i = 0; i < 500; ++i) {
    StateVector s{eng.normal(0.5, 3.0), eng.normal(-2.0, 1.0)};
    MeshKey key = compute_key(s, stats, box);
    for (std::size_t j = 0; j < 2; ++j) {
      double whitened = (s[j] - stats.mean[j]) / stats.std[j];
      double center = static_cast<double>(key.lattice[j]) * box;
      CHECK(std::abs(center - whitened) <= box * 0.5 * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("insert_or_get is idempotent and counts ids densely") {
  Mesh mesh(0.1, NormalizationStats::identity(2));

  auto [id0, new0] = mesh.insert_or_get({0.0, 0.0});
  CHECK(id0 == 0);
  CHECK(new0);
  auto [id1, new1] = mesh.insert_or_get({0.0, 0.0});
  CHECK(id1 == 0);
  CHECK_FALSE(new1);

  // two states in the same box share an id
  auto [id2, new2] = mesh.insert_or_get({0.01, -0.01});
  CHECK(id2 == 0);
  CHECK_FALSE(new2);

  // distinct keys get consecutive ids in insertion order
  rng::Engine eng(3);
  std::set<int> ids{0};
  int inserted = 1;
  for (int i = 0; i < 100; ++i) {
    StateVector s{eng.normal(0.0, 4.0), eng.normal(0.0, 4.0)};
    auto [id, is_new] = mesh.insert_or_get(s);
    if (is_new) {
      CHECK(id == inserted);
      ++inserted;
    }
    ids.insert(id);
  }
  CHECK(static_cast<int>(ids.size()) == mesh.size());
  CHECK(*ids.rbegin() == mesh.size() - 1);
}

TEST_CASE("representative state is the first inserted, exactly") {
  Mesh mesh(0.5, NormalizationStats::identity(1));
  StateVector first{0.201};
  StateVector second{0.199};  // same box, different point
  auto [id, is_new] = mesh.insert_or_get(first);
  CHECK(is_new);
  mesh.insert_or_get(second);
  CHECK(mesh.representative_state(id) == first);

  CHECK_THROWS_AS(mesh.representative_state(kFailureId), std::out_of_range);
  CHECK_THROWS_AS(mesh.representative_state(5), std::out_of_range);
}

TEST_CASE("finer boxes resolve sampled clouds at least as finely") {
  // Round-based keys are not a strict refinement across scales, so ladder
  // monotonicity is asserted on the families the estimators consume:
  // spread-out sampled clouds.
  NormalizationStats stats = NormalizationStats::identity(2);
  rng::Engine eng(11);
  std::vector<StateVector> cloud;
  for (int i = 0; i < 400; ++i) cloud.push_back({eng.normal(), eng.normal()});

  std::size_t previous = 0;
  for (double box : {0.8, 0.4, 0.2, 0.1, 0.05}) {
    std::unordered_set<MeshKey, MeshKeyHash> keys;
    for (const auto& p : cloud) keys.insert(compute_key(p, stats, box));
    CHECK(keys.size() >= previous);
    previous = keys.size();
  }
}
