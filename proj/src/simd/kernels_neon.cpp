// AArch64 only; NEON is part of the baseline there, so no runtime check.

#include "kernels_impl.hpp"

#include <arm_neon.h>

namespace treeramsey::simd::detail {

namespace {

void or_words_neon(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_u64(dst + i, vorrq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
    for (; i < n; ++i) dst[i] = a[i] | b[i];
}

void and_words_neon(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_u64(dst + i, vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
    for (; i < n; ++i) dst[i] = a[i] & b[i];
}

std::uint64_t popcount_words_neon(const std::uint64_t* a, std::size_t n) {
    std::uint64_t total = 0;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        uint8x16_t bytes = vcntq_u8(vreinterpretq_u8_u64(vld1q_u64(a + i)));
        total += vaddlvq_u8(bytes);
    }
    for (; i < n; ++i) total += static_cast<std::uint64_t>(__builtin_popcountll(a[i]));
    return total;
}

bool subset_words_neon(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        uint64x2_t stray = vbicq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
        if ((vgetq_lane_u64(stray, 0) | vgetq_lane_u64(stray, 1)) != 0) return false;
    }
    for (; i < n; ++i) {
        if ((a[i] & ~b[i]) != 0) return false;
    }
    return true;
}

}  // namespace

const BitsetKernels& neon_table() {
    static const BitsetKernels table{
        Isa::kNeon, "neon", &or_words_neon, &and_words_neon, &popcount_words_neon, &subset_words_neon,
    };
    return table;
}

}  // namespace treeramsey::simd::detail
