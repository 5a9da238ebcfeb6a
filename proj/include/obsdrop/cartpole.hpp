#pragma once

#include <cstdint>

namespace obsdrop {

struct CartpoleParams {
  double cart_mass = 0.5;    // M (kg)
  double pole_mass = 0.5;    // m (kg)
  double pole_length = 0.6;  // L (m)
  double gravity = 9.82;     // g (m/s^2)
  double force_scale = 10.0; // N per unit action
  double dt = 0.01;          // s
  double x_limit = 2.4;      // m, leaving the track ends the episode
  int episode_steps = 1000;
  double reset_noise = 0.01; // sigma of the initial-state perturbation
};

// theta = 0 is upright; theta = pi hanging down.
struct CartpoleState {
  double x = 0.0;
  double x_dot = 0.0;
  double theta = 0.0;
  double theta_dot = 0.0;
};

// Accelerations from the coupled equations of motion,
//   (M+m) x'' + m L sin(t) t'^2 - m L cos(t) t'' = u
//   m L^2 t'' - m L cos(t) x'' - m g L sin(t)    = 0
// solved for x'' and t''.
void cartpole_accel(const CartpoleParams& p, const CartpoleState& s, double u,
                    double* x_dd, double* theta_dd);

// One semi-implicit Euler step (velocities first, then positions) under cart
// force u. No termination or reward logic.
CartpoleState cartpole_step_force(const CartpoleParams& p,
                                  const CartpoleState& s, double u);

// Per-step reward in [0,1]: 1 exactly at (x=0, theta=0), 0 at hanging or off
// the track. r = (cos(theta)+1)/2 * max(0, cos(x*pi/(2*x_limit))).
double cartpole_reward(const CartpoleParams& p, const CartpoleState& s);

// Same map evaluated on observation channels; cos_theta is clamped to
// [-1, 1] so predicted observations cannot exceed the real reward scale.
double cartpole_reward_obs(const CartpoleParams& p, double x,
                           double cos_theta);

// Observation [x, x_dot, cos(theta), sin(theta), theta_dot].
constexpr int kCartpoleObsDim = 5;
void cartpole_observe(const CartpoleState& s, double* out);

// Total mechanical energy, for integrator checks.
double cartpole_energy(const CartpoleParams& p, const CartpoleState& s);

// Episode wrapper: owns state and step count, handles reset noise and
// termination.
class Cartpole {
 public:
  Cartpole() = default;
  explicit Cartpole(const CartpoleParams& p) : params_(p) {}

  // Pole near hanging: theta = pi + eps with eps, x, velocities drawn
  // N(0, reset_noise). Draw order: x, x_dot, theta, theta_dot.
  const CartpoleState& reset(std::uint64_t seed);

  struct StepOut {
    double reward;
    bool done;
  };
  // action is clamped to [-1, 1]; u = force_scale * action. Throws on
  // non-finite state.
  StepOut step(double action);

  const CartpoleState& state() const { return state_; }
  const CartpoleParams& params() const { return params_; }
  int steps() const { return steps_; }
  void observe(double* out) const { cartpole_observe(state_, out); }

 private:
  CartpoleParams params_;
  CartpoleState state_;
  int steps_ = 0;
};

}  // namespace obsdrop
