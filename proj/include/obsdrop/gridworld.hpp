#pragma once

#include <cstdint>
#include <vector>

namespace obsdrop {

enum class GridAction : int { up = 0, down = 1, left = 2, right = 3, noop = 4 };
constexpr int kGridActionCount = 5;

struct GridConfig {
  int width = 12;    // square grid, d x d
  int n_apples = 30;
  int n_fires = 30;
  int window = 5;    // egocentric observation window, odd
  int min_steps = 10;
  int max_steps = 100;

  int obs_dim() const { return 2 * window * window; }
};

// Observation layout: plane-major, obs[plane*window^2 + row*window + col],
// plane 0 = apples, plane 1 = fires; cells outside the grid read 0.
struct GridState {
  std::vector<std::uint8_t> apples;  // width*width, row-major
  std::vector<std::uint8_t> fires;
  int agent_row = 0;
  int agent_col = 0;
  bool pending_consume = false;  // an encountered apple sits under the agent
  int steps_remaining = 0;
};

class GridWorld {
 public:
  GridWorld() = default;
  explicit GridWorld(const GridConfig& c);

  // Apples, fires and the agent land on distinct uniform cells;
  // steps_remaining is uniform in [min_steps, max_steps]. Throws on
  // infeasible configs.
  const GridState& reset(std::uint64_t seed);

  struct StepOut {
    double reward;
    bool done;
  };
  // Movement into the boundary leaves the position unchanged. Reward is
  // 1 per step, +6 on arriving at an apple, -8 on arriving at a fire.
  // An encountered apple stays visible until the next step, then vanishes;
  // fires persist.
  StepOut step(GridAction a);

  void observe(double* out) const;  // obs_dim() values
  std::vector<double> observe() const;

  const GridState& state() const { return state_; }
  const GridConfig& config() const { return config_; }
  int apples_left() const;

 private:
  GridConfig config_;
  GridState state_;
};

// Exact next-observation map for unblocked movement: contents shift opposite
// the move, the newly revealed row/column is zeroed and masked out. The mask
// (window x window, 1 = fully determined by the input) applies to both
// planes. No-op is the identity with a full mask.
void grid_shift_oracle(const GridConfig& c, const double* obs, GridAction a,
                       double* out, std::uint8_t* predictable_mask);

}  // namespace obsdrop
