#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "obsdrop/cartpole.hpp"
#include "obsdrop/es.hpp"
#include "obsdrop/gridworld.hpp"

namespace obsdrop {

// Flat experiment configuration. Every key is settable from the config file
// ("key = value" lines, '#' comments) and dumped by --print-config; unknown
// keys are a config error naming the offender.
struct RunConfig {
  std::string environment = "cartpole";  // cartpole | gridworld
  std::uint64_t seed = 1;
  int threads = 0;  // 0 = logical cores
  std::string out_dir = "runs";
  std::string run_name;  // default derived from experiment parameters

  CartpoleParams cartpole;
  int cartpole_policy_hidden = 10;
  int cartpole_wm_hidden = 30;

  GridConfig grid;
  std::string grid_wm = "conv";  // conv | fc

  double peek_probability = 1.0;
  std::string wm_output_mode = "absolute";  // absolute | delta
  double wm_clamp = 10.0;

  EsConfig es;
  int checkpoint_interval = 100;
  int eval_interval = 0;    // 0 disables periodic evaluation
  int eval_rollouts = 16;
  double target_score = 0;  // stop once a periodic eval reaches this (>0)

  std::vector<double> sweep_p_grid = {0.05, 0.1, 0.3, 1.0};
  int sweep_repeats = 3;

  int dream_horizon = 1000;
  bool dream_terminate_on_exit = false;
  int dream_generations = 600;
  int dream_population = 64;
  int dream_rollouts = 4;

  int eval_n = 100;

  int stability_samples = 10000;
  double stability_gain_scale = 5.0;
  int stability_max_trials = 1000;
  double stability_g = 9.8;
  double stability_L = 1.0;
  double stability_M = 1.0;

  int corr_samples = 1000;

  int baseline_transitions = 5000;
  int baseline_generations = 400;
  int baseline_population = 64;
  double baseline_perturb_sigma = 0.1;
  int baseline_width_factor = 1;  // 10 = the widened variant
};

// Parses "key = value" text; throws std::invalid_argument naming the first
// offending key or value.
RunConfig parse_config_text(const std::string& text);
RunConfig load_config_file(const std::string& path);

// Applies one key=value override (the CLI --set option and manifest replay).
void apply_override(RunConfig& cfg, const std::string& key,
                    const std::string& value);

// Full defaults dump in config-file syntax; parse(print(cfg)) == cfg.
std::string print_config(const RunConfig& cfg);

// All (key, value) pairs in schema order — the manifest's config section.
std::vector<std::pair<std::string, std::string>> config_items(
    const RunConfig& cfg);

// Schema-level validation beyond type parsing (ranges, enums).
void validate_config(const RunConfig& cfg);

}  // namespace obsdrop
