#pragma once

// Word-parallel kernels over dense bitsets. Signature families are stored as
// one bit per level subset, so the DP inner loop is nothing but OR/AND over
// long word runs plus popcounts. Each ISA provides the same table; the
// scalar table is the reference every other variant is tested against.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace treeramsey::simd {

enum class Isa { kScalar, kAvx2, kNeon };

struct BitsetKernels {
    Isa isa;
    std::string_view name;
    // dst may alias a or b.
    void (*or_words)(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
    void (*and_words)(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
    std::uint64_t (*popcount_words)(const std::uint64_t* a, std::size_t n);
    // true iff every bit set in a is set in b.
    bool (*subset_words)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
};

const BitsetKernels& scalar_kernels();
// nullptr when the variant was not compiled in or the CPU lacks it.
const BitsetKernels* avx2_kernels();
const BitsetKernels* neon_kernels();

// Best variant for this CPU unless overridden.
const BitsetKernels& active_kernels();

// Pins the active table (tests and the CLI's --kernels flag). Returns false
// when the requested ISA is unavailable; the active table is then unchanged.
bool force_kernels(Isa isa);
void reset_kernels();

inline void or_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> a,
                    std::span<const std::uint64_t> b) {
    active_kernels().or_words(dst.data(), a.data(), b.data(), dst.size());
}

inline void and_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> a,
                     std::span<const std::uint64_t> b) {
    active_kernels().and_words(dst.data(), a.data(), b.data(), dst.size());
}

inline std::uint64_t popcount(std::span<const std::uint64_t> a) {
    return active_kernels().popcount_words(a.data(), a.size());
}

inline bool is_subset(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    return active_kernels().subset_words(a.data(), b.data(), a.size());
}

}  // namespace treeramsey::simd
