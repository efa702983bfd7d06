#include <cstdlib>
#include <string_view>

#include "hmcf/simd.hpp"

namespace hmcf::simd {

#ifdef HMCF_HAVE_AVX2
namespace detail {
const Kernels& avx2_table();
}
#endif

const Kernels* avx2_kernels() {
#ifdef HMCF_HAVE_AVX2
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  if (supported) return &detail::avx2_table();
#endif
  return nullptr;
}

const Kernels& active_kernels() {
  static const Kernels* chosen = [] {
    const char* env = std::getenv("HMCF_SIMD");
    if (env != nullptr && std::string_view(env) == "scalar") return &scalar_kernels();
    const Kernels* v = avx2_kernels();
    return v != nullptr ? v : &scalar_kernels();
  }();
  return *chosen;
}

}  // namespace hmcf::simd
