#include "obsdrop/es.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "obsdrop/kernels.hpp"
#include "obsdrop/rng.hpp"
#include "obsdrop/threadpool.hpp"

namespace obsdrop {

std::vector<double> centered_ranks(const std::vector<double>& fitnesses) {
  const std::size_t n = fitnesses.size();
  std::vector<double> shaped(n, 0.0);
  if (n < 2) return shaped;

  const auto key = [&](std::size_t i) {
    return std::isnan(fitnesses[i]) ? -std::numeric_limits<double>::infinity()
                                    : fitnesses[i];
  };
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return key(a) < key(b); });

  // Fractional ranks, ties averaged so equal fitnesses contribute equally.
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && key(order[j + 1]) == key(order[i])) ++j;
    const double avg_rank = 0.5 * (static_cast<double>(i) + j);
    for (std::size_t k = i; k <= j; ++k)
      shaped[order[k]] = avg_rank / static_cast<double>(n - 1) - 0.5;
    i = j + 1;
  }
  return shaped;
}

EsOptimizer::EsOptimizer(ParamVector mu, const EsConfig& cfg,
                         std::uint64_t seed, std::vector<std::uint8_t> frozen)
    : cfg_(cfg),
      mu_(std::move(mu)),
      frozen_(std::move(frozen)),
      rng_state_(seed) {
  if (cfg_.population_size < 1)
    throw std::invalid_argument("population_size must be >= 1");
  if (cfg_.antithetic && cfg_.population_size % 2 != 0)
    throw std::invalid_argument("antithetic sampling needs an even population");
  if (cfg_.sigma < 0 || cfg_.learning_rate <= 0)
    throw std::invalid_argument("sigma must be >= 0, learning_rate > 0");
  if (!frozen_.empty() && frozen_.size() != mu_.size())
    throw std::invalid_argument("frozen mask size mismatch");
  adam_m_.assign(mu_.size(), 0.0);
  adam_v_.assign(mu_.size(), 0.0);
}

const std::vector<ParamVector>& EsOptimizer::ask() {
  const std::size_t dim = mu_.size();
  const int pop = cfg_.population_size;
  const int pairs = cfg_.antithetic ? pop / 2 : pop;

  Rng rng(seed_chain(rng_state_, stream::ask, generation_));
  candidates_.assign(pop, mu_);
  noise_.assign(pairs, ParamVector(dim, 0.0));

  for (int k = 0; k < pairs; ++k) {
    auto& eps = noise_[k];
    for (std::size_t j = 0; j < dim; ++j)
      eps[j] = (frozen_.empty() || !frozen_[j]) ? rng.gaussian() : 0.0;
    if (cfg_.antithetic) {
      kernels::axpy(cfg_.sigma, eps.data(), candidates_[2 * k].data(), dim);
      kernels::axpy(-cfg_.sigma, eps.data(), candidates_[2 * k + 1].data(),
                    dim);
    } else {
      kernels::axpy(cfg_.sigma, eps.data(), candidates_[k].data(), dim);
    }
  }
  asked_ = true;
  return candidates_;
}

void EsOptimizer::tell(const std::vector<double>& fitnesses) {
  if (!asked_) throw std::logic_error("tell() before ask()");
  if (static_cast<int>(fitnesses.size()) != cfg_.population_size)
    throw std::invalid_argument("one fitness per candidate required");
  for (double f : fitnesses)
    if (std::isnan(f)) ++nan_count_;

  const std::size_t dim = mu_.size();
  std::vector<double> shaped;
  if (cfg_.rank_shaping) {
    shaped = centered_ranks(fitnesses);
  } else {
    // Plain centering keeps the estimator baseline-corrected.
    const double mean =
        std::accumulate(fitnesses.begin(), fitnesses.end(), 0.0) /
        fitnesses.size();
    shaped.resize(fitnesses.size());
    for (std::size_t i = 0; i < fitnesses.size(); ++i)
      shaped[i] = std::isnan(fitnesses[i]) ? 0.0 : fitnesses[i] - mean;
  }

  grad_.assign(dim, 0.0);
  if (cfg_.sigma > 0) {
    const double scale = 1.0 / (cfg_.sigma * cfg_.population_size);
    if (cfg_.antithetic) {
      for (std::size_t k = 0; k < noise_.size(); ++k) {
        const double w = (shaped[2 * k] - shaped[2 * k + 1]) * scale;
        kernels::axpy(w, noise_[k].data(), grad_.data(), dim);
      }
    } else {
      for (std::size_t k = 0; k < noise_.size(); ++k)
        kernels::axpy(shaped[k] * scale, noise_[k].data(), grad_.data(), dim);
    }
  }

  // Adaptive-moment ascent with decoupled weight decay on the mean.
  ++adam_t_;
  const double b1 = cfg_.adam_beta1, b2 = cfg_.adam_beta2;
  const double c1 = 1.0 - std::pow(b1, adam_t_);
  const double c2 = 1.0 - std::pow(b2, adam_t_);
  for (std::size_t j = 0; j < dim; ++j) {
    if (!frozen_.empty() && frozen_[j]) continue;
    const double g = grad_[j] - cfg_.weight_decay * mu_[j];
    adam_m_[j] = b1 * adam_m_[j] + (1.0 - b1) * g;
    adam_v_[j] = b2 * adam_v_[j] + (1.0 - b2) * g * g;
    const double m_hat = adam_m_[j] / c1;
    const double v_hat = adam_v_[j] / c2;
    mu_[j] += cfg_.learning_rate * m_hat / (std::sqrt(v_hat) + cfg_.adam_eps);
  }

  ++generation_;
  asked_ = false;
}

TrainResult es_train(const FitnessFn& fitness, ParamVector init,
                     const EsConfig& cfg, std::uint64_t run_seed, int threads,
                     const std::vector<std::uint8_t>& frozen,
                     const TrainHooks& hooks) {
  EsOptimizer opt(std::move(init), cfg, run_seed, frozen);
  ThreadPool pool(threads);

  TrainResult result;
  result.best_fitness = -std::numeric_limits<double>::infinity();
  std::vector<double> fitnesses(cfg.population_size);

  for (int gen = 0; gen < cfg.generations; ++gen) {
    if (hooks.should_stop && hooks.should_stop(gen, opt.mean())) {
      result.stopped_early = true;
      break;
    }
    const auto start = std::chrono::steady_clock::now();
    const auto& candidates = opt.ask();
    pool.parallel_for(cfg.population_size, [&](int i) {
      fitnesses[i] =
          fitness(candidates[i], seed_chain(run_seed, stream::eval, gen, i));
    });

    GenerationReport report;
    report.generation = gen;
    report.evals = static_cast<long>(cfg.population_size) *
                   cfg.rollouts_per_candidate;
    double best = -std::numeric_limits<double>::infinity();
    int best_idx = -1;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < cfg.population_size; ++i) {
      const double f = std::isnan(fitnesses[i])
                           ? -std::numeric_limits<double>::infinity()
                           : fitnesses[i];
      if (f > best) {
        best = f;
        best_idx = i;
      }
      const double fv = std::isfinite(fitnesses[i]) ? fitnesses[i] : 0.0;
      sum += fv;
      sum_sq += fv * fv;
    }
    report.best = best;
    report.mean = sum / cfg.population_size;
    const double var =
        std::max(0.0, sum_sq / cfg.population_size - report.mean * report.mean);
    report.stddev = std::sqrt(var);

    if (best_idx >= 0 && best > result.best_fitness) {
      result.best_fitness = best;
      result.best_params = candidates[best_idx];
    }

    opt.tell(fitnesses);
    report.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    result.reports.push_back(report);
    if (hooks.on_generation) hooks.on_generation(report, opt.mean());
  }

  if (!result.stopped_early && hooks.should_stop)
    result.stopped_early = hooks.should_stop(cfg.generations, opt.mean());
  result.mean_final = opt.mean();
  if (result.best_params.empty()) result.best_params = result.mean_final;
  return result;
}

}  // namespace obsdrop
