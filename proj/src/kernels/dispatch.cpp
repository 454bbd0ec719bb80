#include <cstdlib>
#include <string_view>

#include "monoidw/kernels.hpp"

namespace monoidw::kernels {

#if defined(MONOIDW_HAVE_AVX2)
extern const KernelSet kAvx2Kernels;
#endif

const KernelSet* avx2() noexcept {
#if defined(MONOIDW_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &kAvx2Kernels : nullptr;
#else
  return nullptr;
#endif
}

const KernelSet& active() noexcept {
  static const KernelSet* chosen = [] {
    const char* forced = std::getenv("MONOIDW_KERNELS");
    if (forced != nullptr && std::string_view(forced) == "scalar") return &scalar();
    const KernelSet* simd = avx2();
    return simd != nullptr ? simd : &scalar();
  }();
  return *chosen;
}

}  // namespace monoidw::kernels
