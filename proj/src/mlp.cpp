#include "obsdrop/mlp.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "obsdrop/kernels.hpp"

namespace obsdrop {

MlpArchitecture::MlpArchitecture(std::vector<int> sizes,
                                 OutputActivation out_act)
    : layer_sizes(std::move(sizes)), output_activation(out_act) {
  if (layer_sizes.size() < 2)
    throw std::invalid_argument("mlp needs at least 2 layers");
  for (int s : layer_sizes)
    if (s < 1) throw std::invalid_argument("mlp layer size must be >= 1");
}

std::int64_t MlpArchitecture::param_count() const {
  std::int64_t n = 0;
  for (std::size_t i = 0; i + 1 < layer_sizes.size(); ++i) {
    const std::int64_t n_in = layer_sizes[i];
    const std::int64_t n_out = layer_sizes[i + 1];
    n += n_in * n_out + n_out;
  }
  return n;
}

std::string MlpArchitecture::descriptor() const {
  std::ostringstream os;
  os << "mlp:";
  for (std::size_t i = 0; i < layer_sizes.size(); ++i) {
    if (i) os << '-';
    os << layer_sizes[i];
  }
  os << ':'
     << (output_activation == OutputActivation::tanh ? "tanh" : "identity");
  return os.str();
}

MlpArchitecture MlpArchitecture::parse_descriptor(const std::string& text) {
  const auto c1 = text.find(':');
  const auto c2 = text.rfind(':');
  if (c1 == std::string::npos || c2 == c1 || text.substr(0, c1) != "mlp")
    throw std::invalid_argument("bad mlp descriptor: " + text);
  std::vector<int> sizes;
  std::istringstream body(text.substr(c1 + 1, c2 - c1 - 1));
  std::string tok;
  while (std::getline(body, tok, '-')) sizes.push_back(std::stoi(tok));
  const std::string act = text.substr(c2 + 1);
  OutputActivation out_act;
  if (act == "tanh")
    out_act = OutputActivation::tanh;
  else if (act == "identity")
    out_act = OutputActivation::identity;
  else
    throw std::invalid_argument("bad mlp output activation: " + act);
  return MlpArchitecture(std::move(sizes), out_act);
}

void mlp_forward(const MlpArchitecture& arch, const double* params,
                 const double* input, double* out, MlpScratch& scratch) {
  const auto& sizes = arch.layer_sizes;
  const std::size_t n_pairs = sizes.size() - 1;
  scratch.a.assign(input, input + sizes[0]);

  const double* p = params;
  for (std::size_t l = 0; l < n_pairs; ++l) {
    const std::size_t n_in = sizes[l];
    const std::size_t n_out = sizes[l + 1];
    const double* w = p;
    const double* b = p + n_in * n_out;
    p = b + n_out;

    const bool last = (l + 1 == n_pairs);
    double* dst = last ? out : (scratch.b.resize(n_out), scratch.b.data());
    kernels::matvec_bias(w, scratch.a.data(), b, dst, n_out, n_in);
    if (!last || arch.output_activation == OutputActivation::tanh) {
      for (std::size_t i = 0; i < n_out; ++i) dst[i] = std::tanh(dst[i]);
    }
    if (!last) scratch.a.swap(scratch.b);
  }
}

void mlp_forward(const MlpArchitecture& arch, const ParamVector& params,
                 const std::vector<double>& input, std::vector<double>& out,
                 MlpScratch& scratch) {
  if (static_cast<std::int64_t>(params.size()) != arch.param_count())
    throw std::invalid_argument("mlp param count mismatch");
  if (static_cast<int>(input.size()) != arch.input_dim())
    throw std::invalid_argument("mlp input dim mismatch");
  out.resize(arch.output_dim());
  mlp_forward(arch, params.data(), input.data(), out.data(), scratch);
}

}  // namespace obsdrop
