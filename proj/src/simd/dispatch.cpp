#include <cstdlib>
#include <cstring>

#include "kernels_internal.hpp"

namespace sieveboot::simd {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(SIEVEBOOT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable& select() noexcept {
    if (const char* forced = std::getenv("SIEVEBOOT_SIMD"); forced && std::strcmp(forced, "scalar") == 0) {
        return detail::scalar_kernels();
    }
    if (const KernelTable* t = avx2_table()) return *t;
    if (const KernelTable* t = neon_table()) return *t;
    return detail::scalar_kernels();
}

}  // namespace

const KernelTable& scalar_table() noexcept { return detail::scalar_kernels(); }

const KernelTable* avx2_table() noexcept {
#if defined(SIEVEBOOT_HAVE_AVX2)
    static const bool ok = cpu_has_avx2();
    return ok ? &detail::avx2_kernels() : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable* neon_table() noexcept {
#if defined(SIEVEBOOT_HAVE_NEON)
    return &detail::neon_kernels();
#else
    return nullptr;
#endif
}

const KernelTable& active() noexcept {
    static const KernelTable& table = select();
    return table;
}

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
    }
    return "unknown";
}

}  // namespace sieveboot::simd
