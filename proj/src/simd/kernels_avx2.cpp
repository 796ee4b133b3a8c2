// Compiled with -mavx2 -mpopcnt; only reached after a runtime CPU check.

#include "kernels_impl.hpp"

#include <immintrin.h>

namespace treeramsey::simd::detail {

namespace {

inline __m256i load(const std::uint64_t* p) {
    return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

inline void store(std::uint64_t* p, __m256i v) {
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

void or_words_avx2(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i x0 = _mm256_or_si256(load(a + i), load(b + i));
        __m256i x1 = _mm256_or_si256(load(a + i + 4), load(b + i + 4));
        store(dst + i, x0);
        store(dst + i + 4, x1);
    }
    for (; i + 4 <= n; i += 4) store(dst + i, _mm256_or_si256(load(a + i), load(b + i)));
    for (; i < n; ++i) dst[i] = a[i] | b[i];
}

void and_words_avx2(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i x0 = _mm256_and_si256(load(a + i), load(b + i));
        __m256i x1 = _mm256_and_si256(load(a + i + 4), load(b + i + 4));
        store(dst + i, x0);
        store(dst + i + 4, x1);
    }
    for (; i + 4 <= n; i += 4) store(dst + i, _mm256_and_si256(load(a + i), load(b + i)));
    for (; i < n; ++i) dst[i] = a[i] & b[i];
}

// Nibble-LUT popcount (Mula et al.), byte counts folded with SAD.
std::uint64_t popcount_words_avx2(const std::uint64_t* a, std::size_t n) {
    const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                         0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low_mask = _mm256_set1_epi8(0x0f);
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i v = load(a + i);
        __m256i lo = _mm256_and_si256(v, low_mask);
        __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
        __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(cnt, _mm256_setzero_si256()));
    }
    std::uint64_t total = static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 0)) +
                          static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 1)) +
                          static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 2)) +
                          static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 3));
    for (; i < n; ++i) total += static_cast<std::uint64_t>(_mm_popcnt_u64(a[i]));
    return total;
}

bool subset_words_avx2(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        // testc(b, a) == 1 iff (~b & a) == 0
        if (!_mm256_testc_si256(load(b + i), load(a + i))) return false;
    }
    for (; i < n; ++i) {
        if ((a[i] & ~b[i]) != 0) return false;
    }
    return true;
}

}  // namespace

const BitsetKernels& avx2_table() {
    static const BitsetKernels table{
        Isa::kAvx2, "avx2", &or_words_avx2, &and_words_avx2, &popcount_words_avx2, &subset_words_avx2,
    };
    return table;
}

}  // namespace treeramsey::simd::detail
