#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kgmatch/simd/kernels.hpp"

namespace kgmatch::simd {

std::string_view isaName(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

bool isaSupported(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(KGMATCH_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& kernelsFor(Isa isa) {
  if (!isaSupported(isa)) {
    throw std::invalid_argument("kernel variant not available: " +
                                std::string(isaName(isa)));
  }
#if defined(KGMATCH_HAVE_AVX2)
  if (isa == Isa::kAvx2) return detail::kAvx2Kernels;
#endif
  return detail::kScalarKernels;
}

namespace {

const KernelTable& selectKernels() {
  const char* forced = std::getenv("KGMATCH_SIMD");
  if (forced != nullptr && std::string(forced) == "scalar") {
    return detail::kScalarKernels;
  }
  if (isaSupported(Isa::kAvx2)) return kernelsFor(Isa::kAvx2);
  return detail::kScalarKernels;
}

}  // namespace

const KernelTable& kernels() {
  static const KernelTable& table = selectKernels();
  return table;
}

}  // namespace kgmatch::simd
