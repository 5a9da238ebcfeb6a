#include "obsdrop/experiment.hpp"

#include <cmath>
#include <stdexcept>

namespace obsdrop {

namespace {

EvalStats stats_from(const std::vector<double>& values) {
  EvalStats s;
  s.n = static_cast<int>(values.size());
  if (s.n == 0) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / s.n;
  if (s.n >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stderr_mean = std::sqrt(ss / (s.n - 1) / s.n);
  }
  return s;
}

}  // namespace

CartpoleTask CartpoleSetup::make_task() const {
  CartpoleTask task(env);
  task.policy_arch = policy_arch;
  task.wm_arch = wm_arch;
  task.wm_delta = wm_delta;
  task.wm_clamp = wm_clamp;
  return task;
}

void CartpoleSetup::bind(CartpoleTask& task, const double* joint) const {
  task.policy_params = joint;
  task.wm_params = joint + policy_dim();
}

RolloutResult CartpoleSetup::rollout(const ParamVector& joint,
                                     std::uint64_t seed,
                                     std::vector<TraceStep>* trace) const {
  if (static_cast<std::int64_t>(joint.size()) != joint_dim())
    throw std::invalid_argument("cartpole joint param size mismatch");
  CartpoleTask task = make_task();
  bind(task, joint.data());
  return dropout_rollout(task, peek_probability, seed, env.episode_steps,
                         trace);
}

FitnessFn CartpoleSetup::fitness() const {
  const CartpoleSetup setup = *this;
  return [setup](const ParamVector& joint, std::uint64_t seed) -> double {
    CartpoleTask task = setup.make_task();
    setup.bind(task, joint.data());
    double total = 0.0;
    for (int r = 0; r < setup.rollouts; ++r) {
      try {
        total += dropout_rollout(task, setup.peek_probability,
                                 seed_chain(seed, r),
                                 setup.env.episode_steps)
                     .total_reward;
      } catch (const std::runtime_error&) {
        return std::nan("");  // divergent rollout, ranked worst
      }
    }
    return total / setup.rollouts;
  };
}

EvalStats CartpoleSetup::evaluate(const ParamVector& joint, int n,
                                  std::uint64_t seed) const {
  CartpoleTask task = make_task();
  bind(task, joint.data());
  std::vector<double> scores(n);
  for (int i = 0; i < n; ++i) {
    try {
      scores[i] = dropout_rollout(task, peek_probability, seed_chain(seed, i),
                                  env.episode_steps)
                      .total_reward;
    } catch (const std::runtime_error&) {
      scores[i] = 0.0;
    }
  }
  return stats_from(scores);
}

GridTask GridSetup::make_task() const {
  GridTask task(env);
  task.wm_kind = wm_kind;
  return task;
}

std::int64_t GridSetup::policy_dim() const {
  return make_task().policy_arch.param_count();
}

std::int64_t GridSetup::wm_dim() const { return make_task().wm_param_count(); }

void GridSetup::bind(GridTask& task, const double* joint) const {
  task.policy_params = joint;
  task.wm_params = joint + task.policy_arch.param_count();
}

RolloutResult GridSetup::rollout(const ParamVector& joint, std::uint64_t seed,
                                 std::vector<TraceStep>* trace) const {
  if (static_cast<std::int64_t>(joint.size()) != joint_dim())
    throw std::invalid_argument("grid joint param size mismatch");
  GridTask task = make_task();
  bind(task, joint.data());
  return dropout_rollout(task, peek_probability, seed, env.max_steps, trace);
}

FitnessFn GridSetup::fitness() const {
  const GridSetup setup = *this;
  return [setup](const ParamVector& joint, std::uint64_t seed) -> double {
    GridTask task = setup.make_task();
    setup.bind(task, joint.data());
    double total = 0.0;
    for (int r = 0; r < setup.rollouts; ++r)
      total += dropout_rollout(task, setup.peek_probability,
                               seed_chain(seed, r), setup.env.max_steps)
                   .total_reward;
    return total / setup.rollouts;
  };
}

EvalStats GridSetup::evaluate(const ParamVector& joint, int n,
                              std::uint64_t seed, bool raw) const {
  GridTask task = make_task();
  bind(task, joint.data());
  std::vector<double> scores(n);
  for (int i = 0; i < n; ++i) {
    const auto res = dropout_rollout(task, peek_probability,
                                     seed_chain(seed, i), env.max_steps);
    scores[i] = raw ? res.total_reward
                    : res.total_reward / std::max(1, res.steps) - 1.0;
  }
  return stats_from(scores);
}

double raw_cartpole_rollout(const CartpoleParams& env,
                            const MlpArchitecture& policy_arch,
                            const ParamVector& policy, std::uint64_t seed) {
  Cartpole cart(env);
  cart.reset(seed_chain(seed, stream::env));
  MlpScratch scratch;
  double obs[kCartpoleObsDim];
  double total = 0.0;
  for (int t = 0; t < env.episode_steps; ++t) {
    cart.observe(obs);
    double force;
    mlp_forward(policy_arch, policy.data(), obs, &force, scratch);
    const auto out = cart.step(force);
    total += out.reward;
    if (out.done) break;
  }
  return total;
}

EvalStats transfer_eval(const CartpoleParams& env,
                        const MlpArchitecture& policy_arch,
                        const ParamVector& policy, int n, std::uint64_t seed) {
  std::vector<double> scores(n);
  for (int i = 0; i < n; ++i) {
    try {
      scores[i] = raw_cartpole_rollout(env, policy_arch, policy,
                                       seed_chain(seed, i));
    } catch (const std::runtime_error&) {
      scores[i] = 0.0;
    }
  }
  return stats_from(scores);
}

}  // namespace obsdrop
