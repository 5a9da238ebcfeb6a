#include "obsdrop/cartpole.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "obsdrop/rng.hpp"

namespace obsdrop {

void cartpole_accel(const CartpoleParams& p, const CartpoleState& s, double u,
                    double* x_dd, double* theta_dd) {
  const double sin_t = std::sin(s.theta);
  const double cos_t = std::cos(s.theta);
  const double m = p.pole_mass;
  const double M = p.cart_mass;
  const double L = p.pole_length;
  const double g = p.gravity;

  const double denom = M + m * sin_t * sin_t;
  const double thrust = u - m * L * sin_t * s.theta_dot * s.theta_dot;
  *x_dd = (thrust + m * g * sin_t * cos_t) / denom;
  *theta_dd = ((M + m) * g * sin_t + cos_t * thrust) / (L * denom);
}

CartpoleState cartpole_step_force(const CartpoleParams& p,
                                  const CartpoleState& s, double u) {
  double x_dd, theta_dd;
  cartpole_accel(p, s, u, &x_dd, &theta_dd);
  CartpoleState n;
  n.x_dot = s.x_dot + x_dd * p.dt;
  n.theta_dot = s.theta_dot + theta_dd * p.dt;
  n.x = s.x + n.x_dot * p.dt;
  n.theta = s.theta + n.theta_dot * p.dt;
  return n;
}

double cartpole_reward(const CartpoleParams& p, const CartpoleState& s) {
  return cartpole_reward_obs(p, s.x, std::cos(s.theta));
}

double cartpole_reward_obs(const CartpoleParams& p, double x,
                           double cos_theta) {
  const double c = std::clamp(cos_theta, -1.0, 1.0);
  const double angle = x * std::numbers::pi / (2.0 * p.x_limit);
  const double track = std::abs(x) >= p.x_limit ? 0.0 : std::cos(angle);
  return 0.5 * (c + 1.0) * std::max(0.0, track);
}

void cartpole_observe(const CartpoleState& s, double* out) {
  out[0] = s.x;
  out[1] = s.x_dot;
  out[2] = std::cos(s.theta);
  out[3] = std::sin(s.theta);
  out[4] = s.theta_dot;
}

double cartpole_energy(const CartpoleParams& p, const CartpoleState& s) {
  const double m = p.pole_mass;
  const double M = p.cart_mass;
  const double L = p.pole_length;
  const double cos_t = std::cos(s.theta);
  return 0.5 * (M + m) * s.x_dot * s.x_dot +
         0.5 * m * L * L * s.theta_dot * s.theta_dot -
         m * L * cos_t * s.theta_dot * s.x_dot +
         m * p.gravity * L * cos_t;
}

const CartpoleState& Cartpole::reset(std::uint64_t seed) {
  Rng rng(seed);
  const double sigma = params_.reset_noise;
  state_.x = sigma * rng.gaussian();
  state_.x_dot = sigma * rng.gaussian();
  state_.theta = std::numbers::pi + sigma * rng.gaussian();
  state_.theta_dot = sigma * rng.gaussian();
  steps_ = 0;
  return state_;
}

Cartpole::StepOut Cartpole::step(double action) {
  const double a = std::clamp(action, -1.0, 1.0);
  state_ = cartpole_step_force(params_, state_, params_.force_scale * a);
  if (!std::isfinite(state_.x) || !std::isfinite(state_.x_dot) ||
      !std::isfinite(state_.theta) || !std::isfinite(state_.theta_dot))
    throw std::runtime_error("cartpole state diverged to non-finite values");
  ++steps_;
  StepOut out;
  out.reward = cartpole_reward(params_, state_);
  out.done =
      std::abs(state_.x) > params_.x_limit || steps_ >= params_.episode_steps;
  return out;
}

}  // namespace obsdrop
