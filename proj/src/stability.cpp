#include "obsdrop/stability.hpp"

#include <cmath>

#include "obsdrop/cartpole.hpp"
#include "obsdrop/rng.hpp"

namespace obsdrop {

bool is_hurwitz(const LinearSystem2x2& sys) {
  return sys.trace() < 0.0 && sys.det() > 0.0;
}

LinearSystem2x2 closed_loop(const LinearSystem2x2& sys,
                            const FeedbackGains& u) {
  return {sys.a, sys.b, sys.c + u.u1, sys.d + u.u2};
}

std::optional<FeedbackGains> find_stabilizing_feedback(
    const LinearSystem2x2& sys, int max_trials, double gain_scale,
    std::uint64_t seed) {
  Rng rng(seed);
  for (int t = 0; t < max_trials; ++t) {
    const FeedbackGains u{gain_scale * rng.gaussian(),
                          gain_scale * rng.gaussian()};
    if (is_hurwitz(closed_loop(sys, u))) return u;
  }
  return std::nullopt;
}

TransferResult transfer_experiment(int n_samples,
                                   const PhysicalLinearization& phys,
                                   double gain_scale, int max_trials,
                                   std::uint64_t seed) {
  TransferResult result;
  result.samples.reserve(n_samples);
  int successes = 0;
  for (int i = 0; i < n_samples; ++i) {
    Rng rng(seed_chain(seed, i));
    TransferSample s{};
    s.sys = {rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()};
    const auto u = find_stabilizing_feedback(s.sys, max_trials, gain_scale,
                                             seed_chain(seed, i, 1));
    s.found = u.has_value();
    s.random_stable = s.found;
    if (u) {
      s.gains = *u;
      s.true_stable = is_hurwitz(phys.true_closed_loop(*u));
    }
    successes += s.true_stable ? 1 : 0;
    result.samples.push_back(s);
  }
  result.success_rate =
      n_samples > 0 ? static_cast<double>(successes) / n_samples : 0.0;
  return result;
}

bool simulate_balance(const FeedbackGains& u, const PhysicalLinearization& phys,
                      double theta0, double theta_dot0, double T,
                      double pole_mass, double dt) {
  CartpoleParams params;
  params.cart_mass = phys.M;
  params.pole_mass = pole_mass;
  params.pole_length = phys.L;
  params.gravity = phys.g;
  params.dt = dt;

  CartpoleState s;
  s.theta = theta0;
  s.theta_dot = theta_dot0;
  const int steps = static_cast<int>(T / dt);
  for (int t = 0; t < steps; ++t) {
    const double force = u.u1 * s.theta + u.u2 * s.theta_dot;
    s = cartpole_step_force(params, s, force);
    if (!std::isfinite(s.theta) || !std::isfinite(s.theta_dot) ||
        std::abs(s.theta) > 1.0)
      return false;
  }
  return std::abs(s.theta) < 1e-3 && std::abs(s.theta_dot) < 1e-3;
}

}  // namespace obsdrop
