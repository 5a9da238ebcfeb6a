#include "obsdrop/gridworld.hpp"

#include <cstring>
#include <stdexcept>

#include "obsdrop/rng.hpp"

namespace obsdrop {

namespace {
constexpr int kDr[kGridActionCount] = {-1, 1, 0, 0, 0};
constexpr int kDc[kGridActionCount] = {0, 0, -1, 1, 0};
}  // namespace

GridWorld::GridWorld(const GridConfig& c) : config_(c) {
  if (c.width < 1 || c.window < 1 || c.window % 2 == 0)
    throw std::invalid_argument("grid config: width >= 1, window odd");
  if (c.n_apples + c.n_fires + 1 > c.width * c.width)
    throw std::invalid_argument("grid config: not enough cells");
  if (c.min_steps < 1 || c.max_steps < c.min_steps)
    throw std::invalid_argument("grid config: bad episode length range");
}

const GridState& GridWorld::reset(std::uint64_t seed) {
  Rng rng(seed);
  const int d = config_.width;
  state_.apples.assign(d * d, 0);
  state_.fires.assign(d * d, 0);

  auto place = [&](std::vector<std::uint8_t>& plane) {
    for (;;) {
      const int cell = static_cast<int>(rng.uniform_int(d * d));
      if (state_.apples[cell] || state_.fires[cell]) continue;
      plane[cell] = 1;
      return cell;
    }
  };
  for (int i = 0; i < config_.n_apples; ++i) place(state_.apples);
  for (int i = 0; i < config_.n_fires; ++i) place(state_.fires);

  for (;;) {
    const int cell = static_cast<int>(rng.uniform_int(d * d));
    if (state_.apples[cell] || state_.fires[cell]) continue;
    state_.agent_row = cell / d;
    state_.agent_col = cell % d;
    break;
  }
  state_.pending_consume = false;
  state_.steps_remaining =
      config_.min_steps +
      static_cast<int>(rng.uniform_int(config_.max_steps - config_.min_steps + 1));
  return state_;
}

GridWorld::StepOut GridWorld::step(GridAction a) {
  const int d = config_.width;

  // Taking any step consumes the apple the agent is standing on.
  if (state_.pending_consume) {
    state_.apples[state_.agent_row * d + state_.agent_col] = 0;
    state_.pending_consume = false;
  }

  const int ai = static_cast<int>(a);
  const int nr = state_.agent_row + kDr[ai];
  const int nc = state_.agent_col + kDc[ai];
  const bool moved = nr >= 0 && nr < d && nc >= 0 && nc < d &&
                     (kDr[ai] != 0 || kDc[ai] != 0);
  double reward = 1.0;
  if (moved) {
    state_.agent_row = nr;
    state_.agent_col = nc;
    const int cell = nr * d + nc;
    if (state_.apples[cell]) {
      reward += 6.0;
      state_.pending_consume = true;  // visible this turn, removed next step
    } else if (state_.fires[cell]) {
      reward -= 8.0;
    }
  }

  --state_.steps_remaining;
  return {reward, state_.steps_remaining <= 0};
}

void GridWorld::observe(double* out) const {
  const int d = config_.width;
  const int w = config_.window;
  const int half = w / 2;
  for (int plane = 0; plane < 2; ++plane) {
    const auto& src = plane == 0 ? state_.apples : state_.fires;
    double* dst = out + plane * w * w;
    for (int r = 0; r < w; ++r) {
      for (int c = 0; c < w; ++c) {
        const int gr = state_.agent_row - half + r;
        const int gc = state_.agent_col - half + c;
        const bool inside = gr >= 0 && gr < d && gc >= 0 && gc < d;
        dst[r * w + c] = inside && src[gr * d + gc] ? 1.0 : 0.0;
      }
    }
  }
}

std::vector<double> GridWorld::observe() const {
  std::vector<double> out(config_.obs_dim());
  observe(out.data());
  return out;
}

int GridWorld::apples_left() const {
  int n = 0;
  for (auto v : state_.apples) n += v;
  return n;
}

void grid_shift_oracle(const GridConfig& c, const double* obs, GridAction a,
                       double* out, std::uint8_t* predictable_mask) {
  const int w = c.window;
  const int ai = static_cast<int>(a);
  // Moving shifts window contents opposite the movement: a cell seen at
  // window position (r, c) reappears at (r - dr, c - dc).
  const int dr = kDr[ai];
  const int dc = kDc[ai];
  for (int plane = 0; plane < 2; ++plane) {
    const double* src = obs + plane * w * w;
    double* dst = out + plane * w * w;
    for (int r = 0; r < w; ++r) {
      for (int c2 = 0; c2 < w; ++c2) {
        const int sr = r + dr;
        const int sc = c2 + dc;
        const bool known = sr >= 0 && sr < w && sc >= 0 && sc < w;
        dst[r * w + c2] = known ? src[sr * w + sc] : 0.0;
      }
    }
  }
  if (predictable_mask) {
    for (int r = 0; r < w; ++r)
      for (int c2 = 0; c2 < w; ++c2) {
        const int sr = r + dr;
        const int sc = c2 + dc;
        predictable_mask[r * w + c2] =
            (sr >= 0 && sr < w && sc >= 0 && sc < w) ? 1 : 0;
      }
  }
}

}  // namespace obsdrop
