#include "obsdrop/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace obsdrop::kernels {

namespace scalar {

double dot(const double* x, const double* y, std::size_t n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += x[i] * y[i];
    s1 += x[i + 1] * y[i + 1];
    s2 += x[i + 2] * y[i + 2];
    s3 += x[i + 3] * y[i + 3];
  }
  double s = (s0 + s1) + (s2 + s3);
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void matvec_bias(const double* w, const double* x, const double* b,
                 double* out, std::size_t rows, std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r) {
    double s = dot(w + r * cols, x, cols);
    out[r] = b ? s + b[r] : s;
  }
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

}  // namespace scalar

#if defined(__x86_64__) || defined(__i386__)
#define OBSDROP_X86 1
namespace avx2 {
double dot(const double* x, const double* y, std::size_t n);
void matvec_bias(const double* w, const double* x, const double* b,
                 double* out, std::size_t rows, std::size_t cols);
void axpy(double a, const double* x, double* y, std::size_t n);
}  // namespace avx2
#else
#define OBSDROP_X86 0
#endif

namespace {

struct Dispatch {
  Backend backend;
  double (*dot)(const double*, const double*, std::size_t);
  void (*matvec_bias)(const double*, const double*, const double*, double*,
                      std::size_t, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
};

Dispatch make_dispatch(Backend b) {
#if OBSDROP_X86
  if (b == Backend::avx2) {
    return {Backend::avx2, avx2::dot, avx2::matvec_bias, avx2::axpy};
  }
#endif
  return {Backend::scalar, scalar::dot, scalar::matvec_bias, scalar::axpy};
}

Backend default_backend() {
  const char* env = std::getenv("OBSDROP_SIMD");
  if (env && std::strcmp(env, "scalar") == 0) return Backend::scalar;
  return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

Dispatch& dispatch() {
  static Dispatch d = make_dispatch(default_backend());
  return d;
}

}  // namespace

bool cpu_has_avx2() {
#if OBSDROP_X86 && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend active_backend() { return dispatch().backend; }

const char* backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

void force_backend(Backend b) {
  if (b == Backend::avx2 && !cpu_has_avx2())
    throw std::invalid_argument("avx2 backend unsupported on this CPU");
  dispatch() = make_dispatch(b);
}

double dot(const double* x, const double* y, std::size_t n) {
  return dispatch().dot(x, y, n);
}

void matvec_bias(const double* w, const double* x, const double* b,
                 double* out, std::size_t rows, std::size_t cols) {
  dispatch().matvec_bias(w, x, b, out, rows, cols);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  dispatch().axpy(a, x, y, n);
}

}  // namespace obsdrop::kernels
