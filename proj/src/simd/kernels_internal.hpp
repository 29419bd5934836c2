#pragma once

#include "sieveboot/simd.hpp"

namespace sieveboot::simd::detail {

const KernelTable& scalar_kernels() noexcept;
#if defined(SIEVEBOOT_HAVE_AVX2)
const KernelTable& avx2_kernels() noexcept;
#endif
#if defined(SIEVEBOOT_HAVE_NEON)
const KernelTable& neon_kernels() noexcept;
#endif

}  // namespace sieveboot::simd::detail
