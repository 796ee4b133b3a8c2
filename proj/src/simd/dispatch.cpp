#include "kernels_impl.hpp"

#include <atomic>

namespace treeramsey::simd {

namespace {

const BitsetKernels& detect() {
    if (const BitsetKernels* k = avx2_kernels()) return *k;
    if (const BitsetKernels* k = neon_kernels()) return *k;
    return scalar_kernels();
}

std::atomic<const BitsetKernels*>& slot() {
    static std::atomic<const BitsetKernels*> active{&detect()};
    return active;
}

}  // namespace

const BitsetKernels* avx2_kernels() {
#if defined(TREERAMSEY_BUILD_AVX2)
    static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
    return supported ? &detail::avx2_table() : nullptr;
#else
    return nullptr;
#endif
}

const BitsetKernels* neon_kernels() {
#if defined(TREERAMSEY_BUILD_NEON)
    return &detail::neon_table();
#else
    return nullptr;
#endif
}

const BitsetKernels& active_kernels() { return *slot().load(std::memory_order_acquire); }

bool force_kernels(Isa isa) {
    const BitsetKernels* table = nullptr;
    switch (isa) {
        case Isa::kScalar: table = &scalar_kernels(); break;
        case Isa::kAvx2: table = avx2_kernels(); break;
        case Isa::kNeon: table = neon_kernels(); break;
    }
    if (table == nullptr) return false;
    slot().store(table, std::memory_order_release);
    return true;
}

void reset_kernels() { slot().store(&detect(), std::memory_order_release); }

}  // namespace treeramsey::simd
