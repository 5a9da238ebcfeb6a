#include "obsdrop/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "obsdrop/checkpoint.hpp"

namespace obsdrop {

namespace {

struct Key {
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': bad number '" + v +
                                "'");
  }
}

long long parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': bad integer '" + v +
                                "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::invalid_argument("config key '" + key + "': bad bool '" + v +
                              "'");
}

template <typename T>
Key int_key(T RunConfig::* member) {
  return {[member](RunConfig& c, const std::string& v) {
            c.*member = static_cast<T>(parse_int("", v));
          },
          [member](const RunConfig& c) { return std::to_string(c.*member); }};
}

Key double_key(double RunConfig::* member) {
  return {[member](RunConfig& c, const std::string& v) {
            c.*member = parse_double("", v);
          },
          [member](const RunConfig& c) { return format_double(c.*member); }};
}

Key string_key(std::string RunConfig::* member) {
  return {[member](RunConfig& c, const std::string& v) { c.*member = v; },
          [member](const RunConfig& c) { return c.*member; }};
}

template <typename Sub, typename T>
Key nested_int(Sub RunConfig::* sub, T Sub::* member) {
  return {[=](RunConfig& c, const std::string& v) {
            (c.*sub).*member = static_cast<T>(parse_int("", v));
          },
          [=](const RunConfig& c) { return std::to_string((c.*sub).*member); }};
}

template <typename Sub>
Key nested_double(Sub RunConfig::* sub, double Sub::* member) {
  return {[=](RunConfig& c, const std::string& v) {
            (c.*sub).*member = parse_double("", v);
          },
          [=](const RunConfig& c) { return format_double((c.*sub).*member); }};
}

template <typename Sub>
Key nested_bool(Sub RunConfig::* sub, bool Sub::* member) {
  return {[=](RunConfig& c, const std::string& v) {
            (c.*sub).*member = parse_bool("", v);
          },
          [=](const RunConfig& c) {
            return (c.*sub).*member ? "true" : "false";
          }};
}

Key bool_key(bool RunConfig::* member) {
  return {[member](RunConfig& c, const std::string& v) {
            c.*member = parse_bool("", v);
          },
          [member](const RunConfig& c) { return c.*member ? "true" : "false"; }};
}

// Ordered schema; the order defines --print-config output.
const std::vector<std::pair<std::string, Key>>& schema() {
  static const std::vector<std::pair<std::string, Key>> keys = {
      {"environment", string_key(&RunConfig::environment)},
      {"seed",
       {[](RunConfig& c, const std::string& v) {
          c.seed = static_cast<std::uint64_t>(parse_int("seed", v));
        },
        [](const RunConfig& c) { return std::to_string(c.seed); }}},
      {"threads", int_key(&RunConfig::threads)},
      {"out_dir", string_key(&RunConfig::out_dir)},
      {"run_name", string_key(&RunConfig::run_name)},

      {"cartpole.cart_mass", nested_double(&RunConfig::cartpole,
                                           &CartpoleParams::cart_mass)},
      {"cartpole.pole_mass", nested_double(&RunConfig::cartpole,
                                           &CartpoleParams::pole_mass)},
      {"cartpole.pole_length", nested_double(&RunConfig::cartpole,
                                             &CartpoleParams::pole_length)},
      {"cartpole.gravity",
       nested_double(&RunConfig::cartpole, &CartpoleParams::gravity)},
      {"cartpole.force_scale", nested_double(&RunConfig::cartpole,
                                             &CartpoleParams::force_scale)},
      {"cartpole.dt", nested_double(&RunConfig::cartpole, &CartpoleParams::dt)},
      {"cartpole.x_limit",
       nested_double(&RunConfig::cartpole, &CartpoleParams::x_limit)},
      {"cartpole.episode_steps", nested_int(&RunConfig::cartpole,
                                            &CartpoleParams::episode_steps)},
      {"cartpole.reset_noise", nested_double(&RunConfig::cartpole,
                                             &CartpoleParams::reset_noise)},
      {"cartpole.policy_hidden", int_key(&RunConfig::cartpole_policy_hidden)},
      {"cartpole.wm_hidden", int_key(&RunConfig::cartpole_wm_hidden)},

      {"grid.width", nested_int(&RunConfig::grid, &GridConfig::width)},
      {"grid.apples", nested_int(&RunConfig::grid, &GridConfig::n_apples)},
      {"grid.fires", nested_int(&RunConfig::grid, &GridConfig::n_fires)},
      {"grid.window", nested_int(&RunConfig::grid, &GridConfig::window)},
      {"grid.min_steps", nested_int(&RunConfig::grid, &GridConfig::min_steps)},
      {"grid.max_steps", nested_int(&RunConfig::grid, &GridConfig::max_steps)},
      {"grid.wm", string_key(&RunConfig::grid_wm)},

      {"peek_probability", double_key(&RunConfig::peek_probability)},
      {"wm.output_mode", string_key(&RunConfig::wm_output_mode)},
      {"wm.clamp", double_key(&RunConfig::wm_clamp)},

      {"es.population", nested_int(&RunConfig::es, &EsConfig::population_size)},
      {"es.rollouts",
       nested_int(&RunConfig::es, &EsConfig::rollouts_per_candidate)},
      {"es.sigma", nested_double(&RunConfig::es, &EsConfig::sigma)},
      {"es.learning_rate",
       nested_double(&RunConfig::es, &EsConfig::learning_rate)},
      {"es.weight_decay",
       nested_double(&RunConfig::es, &EsConfig::weight_decay)},
      {"es.generations", nested_int(&RunConfig::es, &EsConfig::generations)},
      {"es.antithetic", nested_bool(&RunConfig::es, &EsConfig::antithetic)},
      {"es.rank_shaping", nested_bool(&RunConfig::es, &EsConfig::rank_shaping)},
      {"es.checkpoint_interval", int_key(&RunConfig::checkpoint_interval)},
      {"es.eval_interval", int_key(&RunConfig::eval_interval)},
      {"es.eval_rollouts", int_key(&RunConfig::eval_rollouts)},
      {"es.target_score", double_key(&RunConfig::target_score)},

      {"sweep.p_grid",
       {[](RunConfig& c, const std::string& v) {
          c.sweep_p_grid.clear();
          std::istringstream is(v);
          std::string tok;
          while (std::getline(is, tok, ','))
            c.sweep_p_grid.push_back(parse_double("sweep.p_grid", trim(tok)));
          if (c.sweep_p_grid.empty())
            throw std::invalid_argument("config key 'sweep.p_grid': empty");
        },
        [](const RunConfig& c) {
          std::string s;
          for (std::size_t i = 0; i < c.sweep_p_grid.size(); ++i) {
            if (i) s += ',';
            s += format_double(c.sweep_p_grid[i]);
          }
          return s;
        }}},
      {"sweep.repeats", int_key(&RunConfig::sweep_repeats)},

      {"dream.horizon", int_key(&RunConfig::dream_horizon)},
      {"dream.terminate_on_exit", bool_key(&RunConfig::dream_terminate_on_exit)},
      {"dream.generations", int_key(&RunConfig::dream_generations)},
      {"dream.population", int_key(&RunConfig::dream_population)},
      {"dream.rollouts", int_key(&RunConfig::dream_rollouts)},

      {"eval.rollouts", int_key(&RunConfig::eval_n)},

      {"stability.samples", int_key(&RunConfig::stability_samples)},
      {"stability.gain_scale", double_key(&RunConfig::stability_gain_scale)},
      {"stability.max_trials", int_key(&RunConfig::stability_max_trials)},
      {"stability.g", double_key(&RunConfig::stability_g)},
      {"stability.L", double_key(&RunConfig::stability_L)},
      {"stability.M", double_key(&RunConfig::stability_M)},

      {"corr.samples", int_key(&RunConfig::corr_samples)},

      {"baseline.transitions", int_key(&RunConfig::baseline_transitions)},
      {"baseline.generations", int_key(&RunConfig::baseline_generations)},
      {"baseline.population", int_key(&RunConfig::baseline_population)},
      {"baseline.perturb_sigma",
       double_key(&RunConfig::baseline_perturb_sigma)},
      {"baseline.width_factor", int_key(&RunConfig::baseline_width_factor)},
  };
  return keys;
}

const Key* find_key(const std::string& name) {
  for (const auto& [key, handler] : schema())
    if (key == name) return &handler;
  return nullptr;
}

}  // namespace

void apply_override(RunConfig& cfg, const std::string& key,
                    const std::string& value) {
  const Key* handler = find_key(key);
  if (!handler)
    throw std::invalid_argument("unknown config key '" + key + "'");
  try {
    handler->set(cfg, value);
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    if (what.find("config key") == 0) throw;
    throw std::invalid_argument("config key '" + key + "': bad value '" +
                                value + "'");
  }
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected 'key = value'");
    apply_override(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  validate_config(cfg);
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string print_config(const RunConfig& cfg) {
  std::ostringstream out;
  for (const auto& [key, handler] : schema())
    out << key << " = " << handler.get(cfg) << '\n';
  return out.str();
}

std::vector<std::pair<std::string, std::string>> config_items(
    const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> items;
  for (const auto& [key, handler] : schema())
    items.emplace_back(key, handler.get(cfg));
  return items;
}

void validate_config(const RunConfig& cfg) {
  const auto fail = [](const std::string& key, const std::string& why) {
    throw std::invalid_argument("config key '" + key + "': " + why);
  };
  if (cfg.environment != "cartpole" && cfg.environment != "gridworld")
    fail("environment", "must be cartpole or gridworld");
  if (cfg.grid_wm != "conv" && cfg.grid_wm != "fc")
    fail("grid.wm", "must be conv or fc");
  if (cfg.wm_output_mode != "absolute" && cfg.wm_output_mode != "delta")
    fail("wm.output_mode", "must be absolute or delta");
  if (cfg.peek_probability < 0.0 || cfg.peek_probability > 1.0)
    fail("peek_probability", "must lie in [0, 1]");
  if (cfg.es.population_size < 1) fail("es.population", "must be >= 1");
  if (cfg.es.antithetic && cfg.es.population_size % 2 != 0)
    fail("es.population", "must be even with antithetic sampling");
  if (cfg.es.rollouts_per_candidate < 1) fail("es.rollouts", "must be >= 1");
  if (cfg.es.sigma < 0) fail("es.sigma", "must be >= 0");
  if (cfg.es.learning_rate <= 0) fail("es.learning_rate", "must be > 0");
  if (cfg.es.generations < 0) fail("es.generations", "must be >= 0");
  if (cfg.cartpole.dt <= 0) fail("cartpole.dt", "must be > 0");
  if (cfg.cartpole.episode_steps < 1)
    fail("cartpole.episode_steps", "must be >= 1");
  if (cfg.cartpole.cart_mass <= 0 || cfg.cartpole.pole_mass <= 0 ||
      cfg.cartpole.pole_length <= 0 || cfg.cartpole.gravity <= 0 ||
      cfg.cartpole.force_scale <= 0 || cfg.cartpole.x_limit <= 0)
    fail("cartpole.*", "physical constants must be positive");
  if (cfg.grid.width < 1) fail("grid.width", "must be >= 1");
  if (cfg.grid.window < 1 || cfg.grid.window % 2 == 0)
    fail("grid.window", "must be odd and >= 1");
  if (cfg.grid.n_apples < 0 || cfg.grid.n_fires < 0 ||
      cfg.grid.n_apples + cfg.grid.n_fires + 1 > cfg.grid.width * cfg.grid.width)
    fail("grid.apples/fires", "must fit the grid with a free agent cell");
  if (cfg.grid.min_steps < 1 || cfg.grid.max_steps < cfg.grid.min_steps)
    fail("grid.min_steps/max_steps", "need 1 <= min <= max");
  for (double p : cfg.sweep_p_grid)
    if (p < 0.0 || p > 1.0) fail("sweep.p_grid", "entries must lie in [0, 1]");
  if (cfg.sweep_repeats < 1) fail("sweep.repeats", "must be >= 1");
  if (cfg.dream_horizon < 1) fail("dream.horizon", "must be >= 1");
  if (cfg.eval_n < 1) fail("eval.rollouts", "must be >= 1");
  if (cfg.stability_samples < 1) fail("stability.samples", "must be >= 1");
  if (cfg.stability_max_trials < 1) fail("stability.max_trials", "must be >= 1");
  if (cfg.corr_samples < 2) fail("corr.samples", "must be >= 2");
  if (cfg.baseline_width_factor < 1)
    fail("baseline.width_factor", "must be >= 1");
}

}  // namespace obsdrop
