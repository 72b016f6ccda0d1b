#pragma once

#include <vector>

#include "reachmesh/rng.hpp"

namespace reachmesh {

/// A planar impulse push: force magnitude in Newtons, direction angle in
/// radians ([0, 2pi), 0 along +x), applied for `duration` seconds.
struct Disturbance {
  double magnitude = 0.0;
  double angle = 0.0;
  double duration = 0.01;

  static Disturbance none() { return {0.0, 0.0, 0.01}; }
};

/// Ordered finite list of pushes. Order is significant: it indexes every
/// mesh entry's transition list.
struct DisturbanceSet {
  std::vector<Disturbance> pushes;

  std::size_t size() const { return pushes.size(); }
};

/// `count` pushes with signed magnitudes equally spaced over [f_min, f_max];
/// the sign maps to angle 0 (positive, +x) or pi (negative, -x).
DisturbanceSet disturbance_grid(int count, double f_min, double f_max, double duration);

/// Uniform sampler over magnitude [mag_min, mag_max] and angle [0, 2pi).
struct DisturbanceSampler {
  double mag_min = 5.0;
  double mag_max = 15.0;
  double duration = 0.01;

  void validate() const;
};

/// Draws magnitude then angle from `engine`, advancing it deterministically.
Disturbance sample_disturbance(const DisturbanceSampler& sampler, rng::Engine& engine);

}  // namespace reachmesh
