#pragma once

#include <cstdint>
#include <vector>

#include "obsdrop/es.hpp"
#include "obsdrop/experiment.hpp"

namespace obsdrop {

struct DreamConfig {
  int horizon = 1000;
  bool init_from_real = true;  // sample the initial observation via env reset
  bool terminate_on_predicted_exit = false;
  int rollouts = 4;  // per candidate during dream training
};

// Learned world model as a dream transition map: obs, action -> next obs,
// with the same clamping as the dropout wrapper. One instance per rollout
// thread (holds scratch buffers).
struct LearnedWorldModel {
  MlpArchitecture arch;
  ParamVector params;
  bool delta = false;
  double clamp = 10.0;

  void predict(const double* obs, double action, double* next);

  MlpScratch scratch;
  std::vector<double> in_buf, out_buf;
  int clamp_events = 0;
};

// One episode lived entirely inside a world model. The initial observation
// comes from a real reset (the env is discarded afterwards); rewards apply
// the environment's reward map to the *predicted* observation.
template <class Model>
double dream_rollout(const CartpoleParams& env,
                     const MlpArchitecture& policy_arch, const double* policy,
                     Model& model, const DreamConfig& cfg,
                     std::uint64_t seed) {
  Cartpole cart(env);
  cart.reset(seed_chain(seed, stream::env));
  std::vector<double> obs(kCartpoleObsDim), next(kCartpoleObsDim);
  cart.observe(obs.data());

  MlpScratch scratch;
  double total = 0.0;
  for (int t = 0; t < cfg.horizon; ++t) {
    double force;
    mlp_forward(policy_arch, policy, obs.data(), &force, scratch);
    model.predict(obs.data(), force, next.data());
    obs.swap(next);
    total += cartpole_reward_obs(env, obs[0], obs[2]);
    if (cfg.terminate_on_predicted_exit && std::abs(obs[0]) > env.x_limit)
      break;
  }
  return total;
}

// ES over a fresh policy, fitness = mean dream score inside the frozen model.
TrainResult dream_train(const CartpoleSetup& setup, const ParamVector& wm,
                        const DreamConfig& dream_cfg, const EsConfig& es_cfg,
                        std::uint64_t seed, int threads,
                        const TrainHooks& hooks = {});

double dream_score(const CartpoleSetup& setup, const ParamVector& wm,
                   const ParamVector& policy, const DreamConfig& cfg,
                   int n, std::uint64_t seed);

// One-step transitions gathered from real-environment rollouts.
struct TransitionDataset {
  int obs_dim = kCartpoleObsDim;
  std::vector<double> obs;      // size * obs_dim
  std::vector<double> actions;  // size
  std::vector<double> next;     // size * obs_dim
  std::size_t size() const { return actions.size(); }
};

// Replays checkpointed policies (earliest = near-random, latest = competent)
// with fresh sigma-scaled parameter noise, mixing behaviour from the whole
// training run, and keeps the first n transitions.
TransitionDataset collect_transitions(
    const CartpoleParams& env, const MlpArchitecture& policy_arch,
    const std::vector<ParamVector>& policy_checkpoints, int n,
    double perturb_sigma, std::uint64_t seed);

double dataset_mse(const TransitionDataset& data, const MlpArchitecture& arch,
                   const ParamVector& params);

// Supervised forward-predictive baseline: black-box minimization of the mean
// squared one-step prediction error (fitness = -MSE).
TrainResult fit_supervised_wm(const TransitionDataset& data,
                              const MlpArchitecture& arch,
                              const EsConfig& es_cfg, std::uint64_t seed,
                              int threads, const TrainHooks& hooks = {});

}  // namespace obsdrop
