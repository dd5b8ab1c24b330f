#include "rotwave/simd/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace rotwave::simd {

#if defined(ROTWAVE_HAVE_AVX2)
const KernelTable& avx2_kernel_table() noexcept; // kernels_avx2.cpp
#endif

const KernelTable* avx2_kernels() noexcept {
#if defined(ROTWAVE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return supported ? &avx2_kernel_table() : nullptr;
#else
    return nullptr;
#endif
}

namespace {

const KernelTable& select() noexcept {
    const char* forced = std::getenv("ROTWAVE_SIMD");
    const std::string_view want = forced ? forced : "";
    if (want == "scalar") return scalar_kernels();
    if (const KernelTable* t = avx2_kernels()) return *t;
    return scalar_kernels();
}

} // namespace

const KernelTable& active() noexcept {
    static const KernelTable& table = select();
    return table;
}

} // namespace rotwave::simd
