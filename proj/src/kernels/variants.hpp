#pragma once

#include "lvdt/kernels.hpp"

namespace lvdt::kernels::detail {

extern const KernelTable kScalarTable;

#if defined(LVDT_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif

#if defined(LVDT_HAVE_NEON)
extern const KernelTable kNeonTable;
#endif

}  // namespace lvdt::kernels::detail
