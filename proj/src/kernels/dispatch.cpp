#include <cstdlib>
#include <string_view>

#include "lembed/kernels/kernels.hpp"

namespace lembed::kernels {

#ifdef LEMBED_HAVE_AVX2
const KernelTable& avx2_table();
#endif

const KernelTable* avx2_kernels() {
#ifdef LEMBED_HAVE_AVX2
  static const bool supported = __builtin_cpu_supports("avx2");
  if (supported) return &avx2_table();
#endif
  return nullptr;
}

const KernelTable& active_kernels() {
  static const KernelTable* chosen = [] {
    const char* env = std::getenv("LEMBED_KERNELS");
    if (env && std::string_view(env) == "scalar") return &scalar_kernels();
    const KernelTable* simd = avx2_kernels();
    return simd ? simd : &scalar_kernels();
  }();
  return *chosen;
}

}  // namespace lembed::kernels
