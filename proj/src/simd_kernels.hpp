#pragma once

#include "nlfp/simd.hpp"

namespace nlfp::simd::detail {

extern const KernelTable kScalarTable;
#if defined(NLFP_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif

}  // namespace nlfp::simd::detail
