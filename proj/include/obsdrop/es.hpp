#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "obsdrop/mlp.hpp"

namespace obsdrop {

struct EsConfig {
  int population_size = 64;        // must be even with antithetic sampling
  int rollouts_per_candidate = 4;  // consumed by the fitness builders
  double sigma = 0.1;              // perturbation scale
  double learning_rate = 0.01;
  double weight_decay = 0.005;     // decoupled decay on the mean vector
  int generations = 1000;
  bool antithetic = true;
  bool rank_shaping = true;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
};

// Fitness of one candidate given its derived evaluation seed. Must be pure:
// the (params, seed) pair fully determines the value.
using FitnessFn =
    std::function<double(const ParamVector& params, std::uint64_t seed)>;

struct GenerationReport {
  int generation = 0;
  double best = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
  long evals = 0;     // population_size * rollouts_per_candidate
  double seconds = 0.0;
};

// Fitness-shaping: centered fractional ranks in [-0.5, 0.5], ties averaged,
// NaN ranked worst. All-equal inputs map to all zeros.
std::vector<double> centered_ranks(const std::vector<double>& fitnesses);

// Population-based REINFORCE with antithetic Gaussian perturbations, rank
// shaping, and an adaptive-moment ascent step on the mean.
class EsOptimizer {
 public:
  // `frozen` (optional, same length as mu) marks coordinates that neither
  // perturb nor update — used to train one half of a joint vector.
  EsOptimizer(ParamVector mu, const EsConfig& cfg, std::uint64_t seed,
              std::vector<std::uint8_t> frozen = {});

  const std::vector<ParamVector>& ask();
  void tell(const std::vector<double>& fitnesses);

  const ParamVector& mean() const { return mu_; }
  int generation() const { return generation_; }
  int nan_fitness_count() const { return nan_count_; }

 private:
  EsConfig cfg_;
  ParamVector mu_;
  std::vector<std::uint8_t> frozen_;
  std::vector<ParamVector> candidates_;
  std::vector<ParamVector> noise_;  // one eps vector per antithetic pair
  std::vector<double> adam_m_, adam_v_, grad_;
  std::uint64_t rng_state_;
  int generation_ = 0;
  int adam_t_ = 0;
  int nan_count_ = 0;
  bool asked_ = false;
};

struct TrainHooks {
  // Called after every tell() with the fresh report and the updated mean.
  std::function<void(const GenerationReport&, const ParamVector&)>
      on_generation;
  // Called before generation `gen` (and once after the last); return true to
  // stop training. Drives periodic evaluation and early stopping.
  std::function<bool(int gen, const ParamVector& mean)> should_stop;
};

struct TrainResult {
  ParamVector mean_final;
  ParamVector best_params;   // highest single-candidate fitness observed
  double best_fitness = 0.0;
  std::vector<GenerationReport> reports;
  bool stopped_early = false;
};

// Full ask/evaluate/tell loop. Candidate i of generation g is evaluated with
// seed_chain(run_seed, stream::eval, g, i), so results are independent of
// evaluation order and thread count.
TrainResult es_train(const FitnessFn& fitness, ParamVector init,
                     const EsConfig& cfg, std::uint64_t run_seed, int threads,
                     const std::vector<std::uint8_t>& frozen = {},
                     const TrainHooks& hooks = {});

}  // namespace obsdrop
