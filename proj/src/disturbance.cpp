#include "reachmesh/disturbance.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace reachmesh {

DisturbanceSet disturbance_grid(int count, double f_min, double f_max, double duration) {
  if (count < 2) throw std::invalid_argument("disturbance_grid: count must be at least 2");
  if (!(f_min < f_max)) throw std::invalid_argument("disturbance_grid: f_min must be below f_max");
  if (!(duration > 0.0)) throw std::invalid_argument("disturbance_grid: duration must be positive");

  DisturbanceSet set;
  set.pushes.reserve(static_cast<std::size_t>(count));
  double spacing = (f_max - f_min) / static_cast<double>(count - 1);
  for (int i = 0; i < count; ++i) {
    double value = (i == count - 1) ? f_max : f_min + spacing * static_cast<double>(i);
    Disturbance push;
    push.magnitude = std::abs(value);
    push.angle = value < 0.0 ? std::numbers::pi : 0.0;
    push.duration = duration;
    set.pushes.push_back(push);
  }
  return set;
}

void DisturbanceSampler::validate() const {
  if (!(mag_min <= mag_max)) throw std::invalid_argument("disturbance sampler: min > max");
  if (mag_min < 0.0) throw std::invalid_argument("disturbance sampler: negative magnitude");
  if (!(duration > 0.0)) throw std::invalid_argument("disturbance sampler: duration must be positive");
}

Disturbance sample_disturbance(const DisturbanceSampler& sampler, rng::Engine& engine) {
  Disturbance push;
  push.magnitude = engine.uniform(sampler.mag_min, sampler.mag_max);
  push.angle = engine.uniform(0.0, 2.0 * std::numbers::pi);
  push.duration = sampler.duration;
  return push;
}

}  // namespace reachmesh
