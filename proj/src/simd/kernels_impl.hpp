#pragma once

#include "divscore/simd/kernels.hpp"

namespace divscore::simd::detail {

extern const KernelTable scalar_table;
#if defined(DIVSCORE_HAVE_AVX2)
extern const KernelTable avx2_table;
#endif
#if defined(DIVSCORE_HAVE_NEON)
extern const KernelTable neon_table;
#endif

} // namespace divscore::simd::detail
