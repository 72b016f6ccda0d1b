#include "reachmesh/env/walk1d.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace reachmesh {

Walk1dEnv::Walk1dEnv(int boundary, double start) : boundary_(boundary), start_(start) {
  if (boundary < 2) throw std::invalid_argument("walk1d: boundary must be at least 2");
  if (start < 1.0 || start > boundary - 1)
    throw std::invalid_argument("walk1d: start position outside {1, ..., K-1}");
}

bool Walk1dEnv::is_failure(const StateVector& state) const {
  return std::llround(state.at(0)) >= boundary_;
}

SectionOutcome Walk1dEnv::section_step(const StateVector& state, const ActionFn& act,
                                       const Disturbance& push) const {
  long long pos = std::llround(state.at(0));
  if (pos < 1 || pos >= boundary_)
    throw std::invalid_argument("walk1d: position outside {1, ..., K-1}");

  act(state);  // the walk ignores its policy but honors the one-call contract

  pos += push.angle < std::numbers::pi ? 1 : -1;
  if (pos == 0) pos = 1;  // reflecting lower boundary
  if (pos >= boundary_) return SectionOutcome::failure();
  return SectionOutcome::next({static_cast<double>(pos)}, 1.0);
}

}  // namespace reachmesh
