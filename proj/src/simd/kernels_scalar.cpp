#include "kernels_impl.hpp"

#include <bit>

namespace treeramsey::simd {

namespace detail {

void or_words_scalar(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] | b[i];
}

void and_words_scalar(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] & b[i];
}

std::uint64_t popcount_words_scalar(const std::uint64_t* a, std::size_t n) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(a[i]));
    return total;
}

bool subset_words_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        if ((a[i] & ~b[i]) != 0) return false;
    }
    return true;
}

}  // namespace detail

const BitsetKernels& scalar_kernels() {
    static const BitsetKernels table{
        Isa::kScalar,
        "scalar",
        &detail::or_words_scalar,
        &detail::and_words_scalar,
        &detail::popcount_words_scalar,
        &detail::subset_words_scalar,
    };
    return table;
}

}  // namespace treeramsey::simd
