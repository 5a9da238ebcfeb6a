#pragma once

#include <cmath>
#include <vector>

#include "obsdrop/cartpole.hpp"
#include "obsdrop/gridworld.hpp"
#include "obsdrop/mlp.hpp"
#include "obsdrop/plusconv.hpp"

namespace obsdrop {

struct StepOut {
  double reward;
  bool done;
};

// Clamp a world-model output channel into [-bound, bound]; NaN maps to 0.
// Returns true when the raw value had to be altered.
inline bool clamp_channel(double raw, double bound, double* out) {
  if (std::isnan(raw)) {
    *out = 0.0;
    return true;
  }
  if (raw > bound) {
    *out = bound;
    return true;
  }
  if (raw < -bound) {
    *out = -bound;
    return true;
  }
  *out = raw;
  return false;
}

// Swing-up cart-pole with an MLP policy (tanh output -> force) and an MLP
// world model over [obs, action].
struct CartpoleTask {
  using Action = double;

  CartpoleParams env_params;
  MlpArchitecture policy_arch{{kCartpoleObsDim, 10, 1}, OutputActivation::tanh};
  MlpArchitecture wm_arch{{kCartpoleObsDim + 1, 30, kCartpoleObsDim},
                          OutputActivation::identity};
  bool wm_delta = false;
  double wm_clamp = 10.0;

  const double* policy_params = nullptr;
  const double* wm_params = nullptr;

  Cartpole env;
  MlpScratch scratch;
  std::vector<double> wm_in, wm_out;
  int clamp_events = 0;

  CartpoleTask() = default;
  explicit CartpoleTask(const CartpoleParams& p) : env_params(p), env(p) {}

  int obs_dim() const { return kCartpoleObsDim; }
  void env_reset(std::uint64_t seed) { env.reset(seed); }
  void env_observe(double* out) { env.observe(out); }
  StepOut env_step(Action a) {
    const auto out = env.step(a);
    return {out.reward, out.done};
  }

  Action act(const double* obs) {
    double force;
    mlp_forward(policy_arch, policy_params, obs, &force, scratch);
    return force;
  }

  void predict(const double* model_obs, Action a, double* next) {
    wm_in.assign(model_obs, model_obs + kCartpoleObsDim);
    wm_in.push_back(a);
    wm_out.resize(kCartpoleObsDim);
    mlp_forward(wm_arch, wm_params, wm_in.data(), wm_out.data(), scratch);
    for (int i = 0; i < kCartpoleObsDim; ++i) {
      const double raw = wm_delta ? model_obs[i] + wm_out[i] : wm_out[i];
      if (clamp_channel(raw, wm_clamp, &next[i])) ++clamp_events;
    }
  }

  double action_value(Action a) const { return a; }
};

enum class GridWmKind { fc, conv };

// Apples/fires grid with an argmax MLP policy and either the fully connected
// or the plus-kernel convolutional world model. Model observations stay
// binary: predictions pass through the 0.5 threshold.
struct GridTask {
  using Action = GridAction;

  GridConfig env_config;
  MlpArchitecture policy_arch{{50, 100, 32, kGridActionCount},
                              OutputActivation::identity};
  GridWmKind wm_kind = GridWmKind::conv;
  MlpArchitecture wm_fc_arch{{55, 100, 50}, OutputActivation::identity};
  PlusConvArchitecture wm_conv_arch{};

  const double* policy_params = nullptr;
  const double* wm_params = nullptr;

  GridWorld env;
  MlpScratch scratch;
  PlusConvScratch conv_scratch;
  std::vector<double> wm_in, wm_out, logits;
  int clamp_events = 0;  // unused; thresholding bounds grid predictions

  GridTask() = default;
  explicit GridTask(const GridConfig& c) : env_config(c), env(c) {}

  int obs_dim() const { return env_config.obs_dim(); }
  void env_reset(std::uint64_t seed) { env.reset(seed); }
  void env_observe(double* out) { env.observe(out); }
  StepOut env_step(Action a) {
    const auto out = env.step(a);
    return {out.reward, out.done};
  }

  Action act(const double* obs) {
    logits.resize(kGridActionCount);
    mlp_forward(policy_arch, policy_params, obs, logits.data(), scratch);
    int best = 0;
    for (int i = 1; i < kGridActionCount; ++i)
      if (logits[i] > logits[best]) best = i;
    return static_cast<Action>(best);
  }

  void predict(const double* model_obs, Action a, double* next) {
    const int n = obs_dim();
    if (wm_kind == GridWmKind::conv) {
      plusconv_forward(wm_conv_arch, wm_params, model_obs,
                       static_cast<int>(a), next, conv_scratch);
      return;
    }
    wm_in.assign(model_obs, model_obs + n);
    wm_in.resize(n + kGridActionCount, 0.0);
    wm_in[n + static_cast<int>(a)] = 1.0;
    wm_out.resize(n);
    mlp_forward(wm_fc_arch, wm_params, wm_in.data(), wm_out.data(), scratch);
    threshold_binary(wm_out.data(), next, n, 0.5);
  }

  // Pre-threshold prediction, for correlation analysis.
  void predict_raw(const double* obs, Action a, double* raw) {
    const int n = obs_dim();
    if (wm_kind == GridWmKind::conv) {
      plusconv_forward_raw(wm_conv_arch, wm_params, obs, static_cast<int>(a),
                           raw, conv_scratch);
      return;
    }
    wm_in.assign(obs, obs + n);
    wm_in.resize(n + kGridActionCount, 0.0);
    wm_in[n + static_cast<int>(a)] = 1.0;
    mlp_forward(wm_fc_arch, wm_params, wm_in.data(), raw, scratch);
  }

  std::int64_t wm_param_count() const {
    return wm_kind == GridWmKind::conv ? wm_conv_arch.param_count()
                                       : wm_fc_arch.param_count();
  }
  std::string wm_descriptor() const {
    return wm_kind == GridWmKind::conv ? wm_conv_arch.descriptor()
                                       : wm_fc_arch.descriptor();
  }

  double action_value(Action a) const { return static_cast<double>(a); }
};

}  // namespace obsdrop
