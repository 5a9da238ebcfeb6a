#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace obsdrop {

struct LinearSystem2x2 {
  double a, b, c, d;
  double trace() const { return a + d; }
  double det() const { return a * d - b * c; }
};

struct FeedbackGains {
  double u1, u2;
};

// Strict Hurwitz stability: both eigenvalues in the open left half plane,
// equivalently trace < 0 and det > 0 for 2x2. Marginal cases count as
// unstable.
bool is_hurwitz(const LinearSystem2x2& sys);

// Linear feedback enters the second row: [[a, b], [c + u1, d + u2]].
LinearSystem2x2 closed_loop(const LinearSystem2x2& sys,
                            const FeedbackGains& u);

// Draws u1, u2 ~ N(0, gain_scale^2) until the closed loop is Hurwitz.
std::optional<FeedbackGains> find_stabilizing_feedback(
    const LinearSystem2x2& sys, int max_trials, double gain_scale,
    std::uint64_t seed);

// Pole dynamics linearized about upright in the heavy-cart limit:
// true system [[0, 1], [g/L, 0]], cart-force feedback scaled by 1/(M L).
struct PhysicalLinearization {
  double g = 9.8;
  double L = 1.0;
  double M = 1.0;

  LinearSystem2x2 true_system() const { return {0.0, 1.0, g / L, 0.0}; }
  LinearSystem2x2 true_closed_loop(const FeedbackGains& u) const {
    return {0.0, 1.0, g / L + u.u1 / (M * L), u.u2 / (M * L)};
  }
};

struct TransferSample {
  LinearSystem2x2 sys;   // the random "world model"
  FeedbackGains gains;   // first stabilizing feedback found (0,0 if none)
  bool found;            // random search succeeded within max_trials
  bool random_stable;    // == found
  bool true_stable;      // those gains also stabilize the true dynamics
};

struct TransferResult {
  std::vector<TransferSample> samples;
  double success_rate = 0.0;  // fraction of samples with true_stable
};

// For each sample: draw a,b,c,d ~ N(0,1), solve the random system by random
// search, then test the found gains against the true linearization.
TransferResult transfer_experiment(int n_samples,
                                   const PhysicalLinearization& phys,
                                   double gain_scale, int max_trials,
                                   std::uint64_t seed);

// Integrates the full nonlinear cart-pole near upright under the linear
// feedback u = u1*theta + u2*theta_dot (direct cart force, no track limit).
// Converged iff |theta| and |theta_dot| are below 1e-3 at time T.
bool simulate_balance(const FeedbackGains& u, const PhysicalLinearization& phys,
                      double theta0, double theta_dot0, double T,
                      double pole_mass = 0.01, double dt = 0.01);

}  // namespace obsdrop
