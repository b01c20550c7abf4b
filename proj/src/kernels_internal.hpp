#pragma once

#include "maxent/kernels.hpp"

namespace maxent::kernels::detail {

#if defined(MAXENT_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif

}  // namespace maxent::kernels::detail
