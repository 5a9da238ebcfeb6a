#include "obsdrop/plusconv.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "obsdrop/kernels.hpp"

namespace obsdrop {

std::string PlusConvArchitecture::descriptor() const {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "plusconv:w%d-a%d-h%d", window, action_dim,
                hidden);
  return buf;
}

PlusConvArchitecture PlusConvArchitecture::parse_descriptor(
    const std::string& text) {
  PlusConvArchitecture arch;
  if (std::sscanf(text.c_str(), "plusconv:w%d-a%d-h%d", &arch.window,
                  &arch.action_dim, &arch.hidden) != 3)
    throw std::invalid_argument("bad plusconv descriptor: " + text);
  return arch;
}

namespace {

// Field gather order: center, up, down, left, right.
constexpr int kFieldDr[5] = {0, -1, 1, 0, 0};
constexpr int kFieldDc[5] = {0, 0, 0, -1, 1};

double eval_pattern(const PlusConvArchitecture& arch, const double* params,
                    int pattern, int action, PlusConvScratch& scratch) {
  const int in_dim = 5 + arch.action_dim;
  if (in_dim > 32) throw std::invalid_argument("plusconv action_dim too large");
  const double* w1 = params;
  const double* b1 = w1 + static_cast<std::size_t>(arch.hidden) * in_dim;
  const double* w2 = b1 + arch.hidden;
  const double b2 = w2[arch.hidden];

  double input[32] = {};
  for (int j = 0; j < 5; ++j) input[j] = (pattern >> j) & 1 ? 1.0 : 0.0;
  input[5 + action] = 1.0;

  scratch.hidden.resize(arch.hidden);
  kernels::matvec_bias(w1, input, b1, scratch.hidden.data(), arch.hidden,
                       in_dim);
  for (int i = 0; i < arch.hidden; ++i)
    scratch.hidden[i] = std::tanh(scratch.hidden[i]);
  return kernels::dot(w2, scratch.hidden.data(), arch.hidden) + b2;
}

}  // namespace

void plusconv_forward_raw(const PlusConvArchitecture& arch,
                          const double* params, const double* obs, int action,
                          double* out, PlusConvScratch& scratch) {
  if (action < 0 || action >= arch.action_dim)
    throw std::invalid_argument("plusconv action out of range");
  const int w = arch.window;
  for (int i = 0; i < arch.obs_dim(); ++i)
    if (obs[i] != 0.0 && obs[i] != 1.0)
      throw std::invalid_argument("plusconv observation must be binary");

  // The net sees only the 5-bit field pattern plus the fixed action, so at
  // most 32 distinct evaluations exist per call; memoize them.
  scratch.memo_set.fill(0);

  for (int plane = 0; plane < 2; ++plane) {
    const double* src = obs + plane * w * w;
    double* dst = out + plane * w * w;
    for (int r = 0; r < w; ++r) {
      for (int c = 0; c < w; ++c) {
        int pattern = 0;
        for (int j = 0; j < 5; ++j) {
          const int rr = r + kFieldDr[j];
          const int cc = c + kFieldDc[j];
          if (rr < 0 || rr >= w || cc < 0 || cc >= w) continue;
          if (src[rr * w + cc] != 0.0) pattern |= 1 << j;
        }
        if (!scratch.memo_set[pattern]) {
          scratch.memo[pattern] =
              eval_pattern(arch, params, pattern, action, scratch);
          scratch.memo_set[pattern] = 1;
        }
        dst[r * w + c] = scratch.memo[pattern];
      }
    }
  }
}

void threshold_binary(const double* raw, double* out, std::size_t n,
                      double threshold) {
  for (std::size_t i = 0; i < n; ++i) out[i] = raw[i] > threshold ? 1.0 : 0.0;
}

void plusconv_forward(const PlusConvArchitecture& arch, const double* params,
                      const double* obs, int action, double* out,
                      PlusConvScratch& scratch) {
  plusconv_forward_raw(arch, params, obs, action, out, scratch);
  threshold_binary(out, out, arch.obs_dim(), arch.threshold);
}

}  // namespace obsdrop
