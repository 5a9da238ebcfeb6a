#pragma once

#include <cstdint>
#include <vector>

#include "obsdrop/rng.hpp"

namespace obsdrop {

struct RolloutResult {
  double total_reward = 0.0;
  int steps = 0;
  int peeks = 0;
  int clamp_events = 0;
};

struct TraceStep {
  bool peeked;
  std::vector<double> real_obs;
  std::vector<double> model_obs;  // what the policy saw after this step
  double action;
  double reward;
};

// Augmented-MDP rollout. The policy sees the real observation with
// probability p per step (which also resynchronizes the model state to
// reality); otherwise it sees the world model's own next prediction. The
// reward stream always comes from the real environment, and the first
// observation is a forced resynchronization. Peek decisions draw from a
// dedicated sub-stream, so at p = 1 the trajectory is bit-identical to the
// unwrapped environment.
//
// Task provides:
//   int obs_dim() const
//   void env_reset(uint64_t seed)
//   void env_observe(double* out)
//   StepOut env_step(Action)    with fields {double reward; bool done;}
//   Action act(const double* obs)
//   void predict(const double* model_obs, Action a, double* next_model_obs)
//   double action_value(Action) const      (for traces)
//   int clamp_events
template <class Task>
RolloutResult dropout_rollout(Task& task, double peek_probability,
                              std::uint64_t seed, int max_steps,
                              std::vector<TraceStep>* trace = nullptr) {
  Rng peek_rng(seed_chain(seed, stream::peek));
  task.clamp_events = 0;
  task.env_reset(seed_chain(seed, stream::env));

  const int n = task.obs_dim();
  std::vector<double> model_obs(n), next_model(n), real(n);
  task.env_observe(model_obs.data());

  RolloutResult res;
  for (int t = 0; t < max_steps; ++t) {
    const auto action = task.act(model_obs.data());
    const auto step = task.env_step(action);
    res.total_reward += step.reward;
    ++res.steps;

    const bool peek = peek_rng.uniform() < peek_probability;
    if (peek) {
      task.env_observe(model_obs.data());
      ++res.peeks;
    } else {
      task.predict(model_obs.data(), action, next_model.data());
      model_obs.swap(next_model);
    }

    if (trace) {
      task.env_observe(real.data());
      trace->push_back({peek, real, model_obs, task.action_value(action),
                        step.reward});
    }
    if (step.done) break;
  }
  res.clamp_events = task.clamp_events;
  return res;
}

}  // namespace obsdrop
