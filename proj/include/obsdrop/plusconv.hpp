#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "obsdrop/mlp.hpp"

namespace obsdrop {

// Shared-weight convolutional predictor over a square binary window with two
// planes (apples, fires). The receptive field is plus-shaped: the center cell
// and its four cardinal neighbours (the 3x3 kernel corners are held at zero).
// Each cell of each plane is predicted by the same [field+action -> hidden ->
// 1] tanh net, with the one-hot action appended to the gathered field.
// Parameter layout: W1 row-major [hidden x (5+action_dim)], b1[hidden],
// w2[hidden], b2.
struct PlusConvArchitecture {
  int window = 5;
  int action_dim = 5;
  int hidden = 100;
  double threshold = 0.5;

  int cells() const { return window * window; }
  int obs_dim() const { return 2 * window * window; }
  std::int64_t param_count() const {
    return static_cast<std::int64_t>(5 + action_dim) * hidden + hidden +
           hidden + 1;
  }

  std::string descriptor() const;
  static PlusConvArchitecture parse_descriptor(const std::string& text);
};

struct PlusConvScratch {
  std::vector<double> hidden;
  std::array<double, 32> memo{};
  std::array<std::uint8_t, 32> memo_set{};
};

// Pre-threshold outputs for all cells of both planes. Observation layout is
// plane-major: obs[plane*window^2 + row*window + col] with entries in {0,1};
// cells outside the window read as zero during the gather. Output uses the
// same layout.
void plusconv_forward_raw(const PlusConvArchitecture& arch,
                          const double* params, const double* obs, int action,
                          double* out, PlusConvScratch& scratch);

// "greater than threshold rounds to 1, otherwise 0" — ties round down.
void threshold_binary(const double* raw, double* out, std::size_t n,
                      double threshold);

// Thresholded prediction, the form consumed by the dropout wrapper.
void plusconv_forward(const PlusConvArchitecture& arch, const double* params,
                      const double* obs, int action, double* out,
                      PlusConvScratch& scratch);

}  // namespace obsdrop
