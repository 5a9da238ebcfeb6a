#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "obsdrop/dropout.hpp"
#include "obsdrop/es.hpp"
#include "obsdrop/tasks.hpp"

namespace obsdrop {

// Joint [policy | world model] training setups. The fitness of a candidate is
// the average cumulative real-environment reward over `rollouts` augmented
// episodes; divergent rollouts score NaN (ranked worst by the optimizer).

struct EvalStats {
  double mean = 0.0;
  double stderr_mean = 0.0;
  int n = 0;
};

struct CartpoleSetup {
  CartpoleParams env;
  MlpArchitecture policy_arch{{kCartpoleObsDim, 10, 1}, OutputActivation::tanh};
  MlpArchitecture wm_arch{{kCartpoleObsDim + 1, 30, kCartpoleObsDim},
                          OutputActivation::identity};
  double peek_probability = 1.0;
  bool wm_delta = false;
  double wm_clamp = 10.0;
  int rollouts = 4;

  std::int64_t policy_dim() const { return policy_arch.param_count(); }
  std::int64_t wm_dim() const { return wm_arch.param_count(); }
  std::int64_t joint_dim() const { return policy_dim() + wm_dim(); }

  CartpoleTask make_task() const;
  // Binds candidate joint params to a fresh task.
  void bind(CartpoleTask& task, const double* joint) const;

  FitnessFn fitness() const;
  // Mean augmented-env score of one parameter vector over n episodes.
  EvalStats evaluate(const ParamVector& joint, int n,
                     std::uint64_t seed) const;
  RolloutResult rollout(const ParamVector& joint, std::uint64_t seed,
                        std::vector<TraceStep>* trace = nullptr) const;
};

struct GridSetup {
  GridConfig env;
  GridWmKind wm_kind = GridWmKind::conv;
  double peek_probability = 1.0;
  int rollouts = 4;

  GridTask make_task() const;
  void bind(GridTask& task, const double* joint) const;
  std::int64_t policy_dim() const;
  std::int64_t wm_dim() const;
  std::int64_t joint_dim() const { return policy_dim() + wm_dim(); }

  FitnessFn fitness() const;
  // Returns the per-step normalized score (cumulative / steps - 1), the
  // paper-style R; `raw` selects plain cumulative reward instead.
  EvalStats evaluate(const ParamVector& joint, int n, std::uint64_t seed,
                     bool raw = false) const;
  RolloutResult rollout(const ParamVector& joint, std::uint64_t seed,
                        std::vector<TraceStep>* trace = nullptr) const;
};

// Plain real-environment evaluation of a policy alone (no dropout, no world
// model): the transfer metric.
EvalStats transfer_eval(const CartpoleParams& env,
                        const MlpArchitecture& policy_arch,
                        const ParamVector& policy, int n, std::uint64_t seed);

double raw_cartpole_rollout(const CartpoleParams& env,
                            const MlpArchitecture& policy_arch,
                            const ParamVector& policy, std::uint64_t seed);

}  // namespace obsdrop
