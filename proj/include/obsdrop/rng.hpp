#pragma once

#include <cmath>
#include <cstdint>

namespace obsdrop {

// SplitMix64 finalizer. Stateless 64-bit mixing function, identical on every
// platform.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Seed derivation: fold stream indices into a root seed one at a time.
// seed(run, gen, cand, rollout) = chain(chain(chain(run, gen), cand), rollout).
inline std::uint64_t seed_chain(std::uint64_t root, std::uint64_t part) {
  return mix64(root ^ (mix64(part) + 0x9E3779B97F4A7C15ULL));
}
inline std::uint64_t seed_chain(std::uint64_t root, std::uint64_t a,
                                std::uint64_t b) {
  return seed_chain(seed_chain(root, a), b);
}
inline std::uint64_t seed_chain(std::uint64_t root, std::uint64_t a,
                                std::uint64_t b, std::uint64_t c) {
  return seed_chain(seed_chain(root, a, b), c);
}

// Named sub-streams so independent consumers of one seed never overlap.
namespace stream {
constexpr std::uint64_t env = 0x01;
constexpr std::uint64_t peek = 0x02;
constexpr std::uint64_t ask = 0x03;
constexpr std::uint64_t eval = 0x04;
constexpr std::uint64_t init = 0x05;
}  // namespace stream

// Counter-based generator: state advances by the golden-ratio increment and
// each output is the SplitMix64 mix of the counter. Deliberately not the
// platform std::mt19937 so streams reproduce across compilers and machines.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Unbiased integer in [0, n).
  std::uint64_t uniform_int(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % n;
  }

  // Standard normal via the Marsaglia polar method (no libm trig).
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double k = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * k;
    have_spare_ = true;
    return u * k;
  }

  double gaussian(double mean, double stddev) {
    return mean + stddev * gaussian();
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace obsdrop
