#pragma once

#include <cstddef>

namespace obsdrop::kernels {

enum class Backend { scalar, avx2 };

// Backend selected at startup (AVX2 when the CPU supports it).
Backend active_backend();
const char* backend_name(Backend b);
bool cpu_has_avx2();

// Force a backend, for equivalence tests and the OBSDROP_SIMD=scalar
// override. Throws std::invalid_argument if unsupported on this CPU.
void force_backend(Backend b);

// Reduction contract shared by every backend: four partial accumulators in
// lane-strided order, combined as (s0+s1)+(s2+s3), then a sequential tail.
// The scalar reference follows the same order as the 4-wide AVX2 path, so
// results are bit-identical across backends.
double dot(const double* x, const double* y, std::size_t n);

// out = W x + b with W row-major [rows x cols]; b may be null.
void matvec_bias(const double* w, const double* x, const double* b,
                 double* out, std::size_t rows, std::size_t cols);

// y += a * x
void axpy(double a, const double* x, double* y, std::size_t n);

}  // namespace obsdrop::kernels
