#include "reachmesh/env/slip.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace reachmesh {

namespace {

struct SimState {
  double x, y, vx, vy;
};

// Once a flight phase starts with vy at or below this, no apex can occur in
// it (vy only decreases ballistically). Filters out the ~1e-16 vertical
// component that sin(pi) leaves on horizontal pushes.
constexpr double kApexArmVy = 1e-9;

template <typename Deriv>
SimState rk4_step(const Deriv& f, const SimState& s, double h) {
  SimState k1 = f(s);
  SimState s2{s.x + 0.5 * h * k1.x, s.y + 0.5 * h * k1.y, s.vx + 0.5 * h * k1.vx,
              s.vy + 0.5 * h * k1.vy};
  SimState k2 = f(s2);
  SimState s3{s.x + 0.5 * h * k2.x, s.y + 0.5 * h * k2.y, s.vx + 0.5 * h * k2.vx,
              s.vy + 0.5 * h * k2.vy};
  SimState k3 = f(s3);
  SimState s4{s.x + h * k3.x, s.y + h * k3.y, s.vx + h * k3.vx, s.vy + h * k3.vy};
  SimState k4 = f(s4);
  return {s.x + h / 6.0 * (k1.x + 2.0 * (k2.x + k3.x) + k4.x),
          s.y + h / 6.0 * (k1.y + 2.0 * (k2.y + k3.y) + k4.y),
          s.vx + h / 6.0 * (k1.vx + 2.0 * (k2.vx + k3.vx) + k4.vx),
          s.vy + h / 6.0 * (k1.vy + 2.0 * (k2.vy + k3.vy) + k4.vy)};
}

// Locates the earliest time in (0, h] where `crossed(g(state))` first holds,
// assuming it holds at h. Returns the event time and state.
template <typename Deriv, typename Value, typename Crossed>
std::pair<double, SimState> bisect_event(const Deriv& f, const SimState& s0, double h,
                                         const Value& g, const Crossed& crossed, double tol) {
  double lo = 0.0, hi = h;
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    SimState sm = rk4_step(f, s0, mid);
    if (crossed(g(sm)))
      hi = mid;
    else
      lo = mid;
  }
  return {hi, rk4_step(f, s0, hi)};
}

}  // namespace

SlipEnv::SlipEnv(SlipParams params) : params_(params) {
  if (params_.mass <= 0 || params_.stiffness <= 0 || params_.rest_length <= 0 ||
      params_.gravity <= 0)
    throw std::invalid_argument("slip: physical parameters must be positive");
  if (params_.dt <= 0 || params_.event_tol <= 0)
    throw std::invalid_argument("slip: integration parameters must be positive");
}

bool SlipEnv::is_failure(const StateVector& state) const {
  return state.at(0) < params_.h_fail;
}

SectionOutcome SlipEnv::section_step(const StateVector& state, const ActionFn& act,
                                     const Disturbance& push) const {
  const SlipParams& p = params_;
  if (state.size() != 3) throw std::invalid_argument("slip: state must have 3 components");
  if (!all_finite(state)) throw std::invalid_argument("slip: non-finite state");
  if (is_failure(state)) throw std::invalid_argument("slip: section step from a failed state");

  // Push as a velocity impulse at the apex.
  double impulse = push.magnitude * push.duration / p.mass;
  double dvx = impulse * std::cos(push.angle);
  double dvy = impulse * std::sin(push.angle);

  StateVector obs{state[0], state[1] + dvx, state[2]};
  std::vector<double> action = act(obs);
  if (action.size() != 2) throw std::invalid_argument("slip: action must have 2 components");

  double theta = std::clamp(p.touchdown_angle + p.angle_scale * action[0], -p.angle_limit,
                            p.angle_limit);
  double commanded = std::clamp(p.thrust_scale * action[1], -p.thrust_limit, p.thrust_limit);
  double stored = state[2];
  double action_cost = p.action_penalty * (action[0] * action[0] + action[1] * action[1]);

  const double h_td = p.rest_length * std::cos(theta);
  const double r_min = p.min_leg_ratio * p.rest_length;

  auto flight = [&p](const SimState& s) { return SimState{s.vx, s.vy, 0.0, -p.gravity}; };

  SimState s{0.0, state[0], state[1] + dvx, dvy};
  long steps = 0;
  bool released = false;
  bool in_flight = true;
  double foot_x = 0.0;

  // Entering below touchdown height while descending: plant the leg at the
  // commanded angle immediately, with whatever compression that implies.
  if (s.y <= h_td && s.vy <= kApexArmVy) {
    in_flight = false;
    foot_x = s.x + s.y * std::tan(theta);
  }

  auto stance = [&p, &foot_x](const SimState& s) {
    double rx = s.x - foot_x;
    double r = std::hypot(rx, s.y);
    double accel = p.stiffness * (p.rest_length - r) / p.mass;
    return SimState{s.vx, s.vy, accel * rx / r, accel * s.y / r - p.gravity};
  };

  for (int phase = 0; phase < p.max_phases; ++phase) {
    if (in_flight) {
      bool apex_possible = s.vy > kApexArmVy;
      while (true) {
        if (++steps > p.max_steps)
          throw DivergenceError("slip: integration step budget exceeded", state);
        SimState s1 = rk4_step(flight, s, p.dt);

        double t_apex = -1.0, t_td = -1.0;
        SimState s_apex{}, s_td{};
        if (apex_possible && s.vy > 0.0 && s1.vy <= 0.0) {
          auto [t, se] = bisect_event(flight, s, p.dt, [](const SimState& q) { return q.vy; },
                                      [](double v) { return v <= 0.0; }, p.event_tol);
          t_apex = t;
          s_apex = se;
        }
        if (s.y > h_td && s1.y <= h_td) {
          auto [t, se] = bisect_event(flight, s, p.dt,
                                      [h_td](const SimState& q) { return q.y - h_td; },
                                      [](double v) { return v <= 0.0; }, p.event_tol);
          t_td = t;
          s_td = se;
        }

        if (t_apex >= 0.0 && (t_td < 0.0 || t_apex <= t_td)) {
          if (s_apex.y < p.h_fail || !std::isfinite(s_apex.y)) return SectionOutcome::failure();
          return SectionOutcome::next({s_apex.y, s_apex.vx, commanded}, s_apex.x - action_cost);
        }
        if (t_td >= 0.0) {
          s = s_td;
          foot_x = s.x + p.rest_length * std::sin(theta);
          in_flight = false;
          break;
        }
        s = s1;
        if (s.y < p.contact_height) return SectionOutcome::failure();
      }
    } else {
      auto release_charge = [&]() {
        if (released) return;
        double rx = s.x - foot_x;
        double r = std::hypot(rx, s.y);
        double ux = rx / r, uy = s.y / r;
        double along = s.vx * ux + s.vy * uy;
        double disc = along * along + 2.0 * stored / p.mass;
        double dv = (disc > 0.0 ? std::sqrt(disc) : 0.0) - along;
        s.vx += dv * ux;
        s.vy += dv * uy;
        released = true;
      };

      while (true) {
        // Degenerate entry with the leg already at full extension: lift off
        // on the spot instead of letting the spring act in tension.
        if (std::hypot(s.x - foot_x, s.y) >= p.rest_length) {
          release_charge();
          in_flight = true;
          break;
        }
        if (++steps > p.max_steps)
          throw DivergenceError("slip: integration step budget exceeded", state);
        SimState s1 = rk4_step(stance, s, p.dt);

        double r0 = std::hypot(s.x - foot_x, s.y);
        double r1 = std::hypot(s1.x - foot_x, s1.y);
        if (r0 < p.rest_length && r1 >= p.rest_length) {
          s = bisect_event(
                  stance, s, p.dt,
                  [&](const SimState& q) { return std::hypot(q.x - foot_x, q.y) - p.rest_length; },
                  [](double v) { return v >= 0.0; }, p.event_tol)
                  .second;
          release_charge();
          in_flight = true;
          break;
        }
        s = s1;
        if (s.y < p.contact_height || r1 < r_min) return SectionOutcome::failure();
      }
    }
  }
  throw DivergenceError("slip: phase budget exceeded without reaching an apex", state);
}

}  // namespace reachmesh
