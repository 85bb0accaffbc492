#pragma once

// Dense vector kernels used by the embedding, projection and neural-net code.
//
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2+FMA variant. The variant is chosen once at first use from the CPU
// feature flags; setting KGMATCH_SIMD=scalar in the environment pins the
// scalar path. Results of the two paths agree up to floating-point
// reassociation, never bit-for-bit.

#include <cstddef>
#include <span>
#include <string_view>

namespace kgmatch::simd {

enum class Isa { kScalar, kAvx2 };

std::string_view isaName(Isa isa);

struct KernelTable {
  Isa isa;
  float (*dot_f32)(const float* a, const float* b, std::size_t n);
  // y += alpha * x
  void (*axpy_f32)(float alpha, const float* x, float* y, std::size_t n);
  double (*dot_f64)(const double* a, const double* b, std::size_t n);
  void (*axpy_f64)(double alpha, const double* x, double* y, std::size_t n);
  double (*squared_distance_f64)(const double* a, const double* b,
                                 std::size_t n);
};

// True when the variant was compiled in and the running CPU supports it.
bool isaSupported(Isa isa);

// Table for a specific variant. Throws std::invalid_argument when the variant
// is not supported on this machine.
const KernelTable& kernelsFor(Isa isa);

// The table selected for this process.
const KernelTable& kernels();

inline float dot(std::span<const float> a, std::span<const float> b) {
  return kernels().dot_f32(a.data(), b.data(), a.size());
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  return kernels().dot_f64(a.data(), b.data(), a.size());
}

inline void axpy(float alpha, std::span<const float> x, std::span<float> y) {
  kernels().axpy_f32(alpha, x.data(), y.data(), x.size());
}

inline void axpy(double alpha, std::span<const double> x,
                 std::span<double> y) {
  kernels().axpy_f64(alpha, x.data(), y.data(), x.size());
}

inline double squaredDistance(std::span<const double> a,
                              std::span<const double> b) {
  return kernels().squared_distance_f64(a.data(), b.data(), a.size());
}

namespace detail {
extern const KernelTable kScalarKernels;
#if defined(KGMATCH_HAVE_AVX2)
extern const KernelTable kAvx2Kernels;
#endif
}  // namespace detail

}  // namespace kgmatch::simd
