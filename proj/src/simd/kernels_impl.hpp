#pragma once

#include "treeramsey/simd/bitset_kernels.hpp"

namespace treeramsey::simd::detail {

void or_words_scalar(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
void and_words_scalar(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
std::uint64_t popcount_words_scalar(const std::uint64_t* a, std::size_t n);
bool subset_words_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);

#if defined(TREERAMSEY_BUILD_AVX2)
const BitsetKernels& avx2_table();
#endif
#if defined(TREERAMSEY_BUILD_NEON)
const BitsetKernels& neon_table();
#endif

}  // namespace treeramsey::simd::detail
