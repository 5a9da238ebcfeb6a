#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace obsdrop {

using ParamVector = std::vector<double>;

enum class OutputActivation { identity, tanh };

// Fully connected tanh network, forward-only. Parameters live in one flat
// vector: for each consecutive layer pair, a row-major [n_out x n_in] weight
// block followed by an n_out bias block.
struct MlpArchitecture {
  std::vector<int> layer_sizes;
  OutputActivation output_activation = OutputActivation::identity;

  MlpArchitecture() = default;
  MlpArchitecture(std::vector<int> sizes, OutputActivation out_act);

  int input_dim() const { return layer_sizes.front(); }
  int output_dim() const { return layer_sizes.back(); }
  std::int64_t param_count() const;

  // Single-token form, e.g. "mlp:5-10-1:tanh". Used by checkpoints and
  // manifests.
  std::string descriptor() const;
  static MlpArchitecture parse_descriptor(const std::string& text);
};

struct MlpScratch {
  std::vector<double> a;
  std::vector<double> b;
};

// Deterministic forward pass; tanh after each hidden layer, then the
// configured output activation. `out` must hold output_dim() values.
void mlp_forward(const MlpArchitecture& arch, const double* params,
                 const double* input, double* out, MlpScratch& scratch);

void mlp_forward(const MlpArchitecture& arch, const ParamVector& params,
                 const std::vector<double>& input, std::vector<double>& out,
                 MlpScratch& scratch);

}  // namespace obsdrop
