#include "kernels_internal.hpp"

namespace maxent::kernels {

const KernelTable* avx2_table() noexcept {
#if defined(MAXENT_HAVE_AVX2)
  static const bool supported =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &detail::kAvx2Table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() noexcept {
  static const KernelTable& table = avx2_table() ? *avx2_table() : scalar_table();
  return table;
}

}  // namespace maxent::kernels
