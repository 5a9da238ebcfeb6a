#include "obsdrop/dream.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "obsdrop/kernels.hpp"
#include "obsdrop/rng.hpp"

namespace obsdrop {

void LearnedWorldModel::predict(const double* obs, double action,
                                double* next) {
  in_buf.assign(obs, obs + kCartpoleObsDim);
  in_buf.push_back(action);
  out_buf.resize(kCartpoleObsDim);
  mlp_forward(arch, params.data(), in_buf.data(), out_buf.data(), scratch);
  for (int i = 0; i < kCartpoleObsDim; ++i) {
    const double raw = delta ? obs[i] + out_buf[i] : out_buf[i];
    if (clamp_channel(raw, clamp, &next[i])) ++clamp_events;
  }
}

double dream_score(const CartpoleSetup& setup, const ParamVector& wm,
                   const ParamVector& policy, const DreamConfig& cfg, int n,
                   std::uint64_t seed) {
  LearnedWorldModel model{setup.wm_arch, wm, setup.wm_delta, setup.wm_clamp};
  double total = 0.0;
  for (int i = 0; i < n; ++i)
    total += dream_rollout(setup.env, setup.policy_arch, policy.data(), model,
                           cfg, seed_chain(seed, i));
  return total / n;
}

TrainResult dream_train(const CartpoleSetup& setup, const ParamVector& wm,
                        const DreamConfig& dream_cfg, const EsConfig& es_cfg,
                        std::uint64_t seed, int threads,
                        const TrainHooks& hooks) {
  if (static_cast<std::int64_t>(wm.size()) != setup.wm_dim())
    throw std::invalid_argument("world model checkpoint size mismatch");
  const CartpoleSetup base = setup;
  const DreamConfig cfg = dream_cfg;
  const ParamVector wm_params = wm;
  FitnessFn fitness = [base, cfg, wm_params](const ParamVector& policy,
                                             std::uint64_t s) {
    LearnedWorldModel model{base.wm_arch, wm_params, base.wm_delta,
                            base.wm_clamp};
    double total = 0.0;
    for (int r = 0; r < cfg.rollouts; ++r)
      total += dream_rollout(base.env, base.policy_arch, policy.data(), model,
                             cfg, seed_chain(s, r));
    return total / cfg.rollouts;
  };
  ParamVector init(base.policy_dim(), 0.0);
  return es_train(fitness, std::move(init), es_cfg, seed, threads, {}, hooks);
}

TransitionDataset collect_transitions(
    const CartpoleParams& env, const MlpArchitecture& policy_arch,
    const std::vector<ParamVector>& policy_checkpoints, int n,
    double perturb_sigma, std::uint64_t seed) {
  if (policy_checkpoints.empty())
    throw std::invalid_argument("collect_transitions: no checkpoints");
  TransitionDataset data;
  data.obs.reserve(static_cast<std::size_t>(n) * kCartpoleObsDim);
  data.next.reserve(static_cast<std::size_t>(n) * kCartpoleObsDim);
  data.actions.reserve(n);

  MlpScratch scratch;
  Cartpole cart(env);
  double obs[kCartpoleObsDim], next[kCartpoleObsDim];

  int episode = 0;
  while (static_cast<int>(data.size()) < n) {
    const std::uint64_t ep_seed = seed_chain(seed, episode);
    Rng rng(seed_chain(ep_seed, stream::init));
    ParamVector policy =
        policy_checkpoints[episode % policy_checkpoints.size()];
    for (auto& p : policy) p += perturb_sigma * rng.gaussian();

    cart.reset(seed_chain(ep_seed, stream::env));
    cart.observe(obs);
    for (int t = 0;
         t < env.episode_steps && static_cast<int>(data.size()) < n; ++t) {
      double force;
      mlp_forward(policy_arch, policy.data(), obs, &force, scratch);
      const auto out = cart.step(force);
      cart.observe(next);
      data.obs.insert(data.obs.end(), obs, obs + kCartpoleObsDim);
      data.actions.push_back(std::clamp(force, -1.0, 1.0));
      data.next.insert(data.next.end(), next, next + kCartpoleObsDim);
      std::copy(next, next + kCartpoleObsDim, obs);
      if (out.done) break;
    }
    ++episode;
  }
  return data;
}

double dataset_mse(const TransitionDataset& data, const MlpArchitecture& arch,
                   const ParamVector& params) {
  if (data.size() == 0) throw std::invalid_argument("empty dataset");
  MlpScratch scratch;
  std::vector<double> in(kCartpoleObsDim + 1), pred(kCartpoleObsDim);
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double* o = &data.obs[i * kCartpoleObsDim];
    std::copy(o, o + kCartpoleObsDim, in.begin());
    in[kCartpoleObsDim] = data.actions[i];
    mlp_forward(arch, params.data(), in.data(), pred.data(), scratch);
    for (int j = 0; j < kCartpoleObsDim; ++j) {
      const double e = pred[j] - data.next[i * kCartpoleObsDim + j];
      total += e * e;
    }
  }
  return total / (data.size() * kCartpoleObsDim);
}

TrainResult fit_supervised_wm(const TransitionDataset& data,
                              const MlpArchitecture& arch,
                              const EsConfig& es_cfg, std::uint64_t seed,
                              int threads, const TrainHooks& hooks) {
  if (data.size() == 0) throw std::invalid_argument("empty dataset");
  const TransitionDataset* ds = &data;
  FitnessFn fitness = [ds, arch](const ParamVector& params, std::uint64_t) {
    return -dataset_mse(*ds, arch, params);
  };
  ParamVector init(arch.param_count(), 0.0);
  return es_train(fitness, std::move(init), es_cfg, seed, threads, {}, hooks);
}

}  // namespace obsdrop
