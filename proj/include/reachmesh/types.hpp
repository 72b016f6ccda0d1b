#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace reachmesh {

/// A point in a system's continuous state space. Units are environment-specific.
using StateVector = std::vector<double>;

/// Reserved sentinel ID for the absorbing failure state. Never a mesh entry.
inline constexpr int kFailureId = -1;

/// Thrown when an integrator exceeds its step budget. Distinct from a plain
/// failure outcome so that divergence never contaminates passage-time stats.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(std::string what, StateVector state)
      : std::runtime_error(std::move(what)), state(std::move(state)) {}

  StateVector state;
};

inline bool all_finite(const StateVector& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace reachmesh
