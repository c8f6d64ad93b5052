#pragma once

// Data-parallel inner loops of the kriging linear algebra, with a scalar
// reference implementation and an AVX2/FMA variant chosen at runtime.
//
// The variants agree up to floating-point reassociation; tests compare them
// with a tolerance scaled by sum |a_i b_i|.

#include <cstddef>
#include <span>
#include <string_view>

namespace halfline::simd {

enum class Isa { scalar, avx2 };

struct Kernels {
  Isa isa;
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // out[k] = sum_i a[i] * b_k[i] for k = 0..3; a is loaded once per element.
  void (*dot_1x4)(const double* a, const double* b0, const double* b1, const double* b2,
                  const double* b3, std::size_t n, double* out);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
};

/// True if this build and the running CPU can execute the variant.
bool supported(Isa isa);

/// Kernel table of a specific variant; throws std::runtime_error if
/// unsupported.
const Kernels& kernels_for(Isa isa);

/// Kernel table currently in use. Defaults to the best supported variant; the
/// HALFLINE_SIMD environment variable (scalar|avx2) overrides the default.
const Kernels& active();

/// Forces a variant for the rest of the process (tests, benchmarking).
void set_active(Isa isa);

std::string_view name(Isa isa);

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size() < b.size() ? a.size() : b.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size() < y.size() ? x.size() : y.size());
}

namespace detail {
extern const Kernels kScalarKernels;
#if defined(HALFLINE_HAVE_AVX2)
extern const Kernels kAvx2Kernels;
#endif
}  // namespace detail

}  // namespace halfline::simd
