#pragma once

#include <cstdint>
#include <limits>

namespace treeramsey {

// SplitMix64 stream with keyed splitting. A child stream depends only on the
// parent's seed and the key, never on how many values the parent has drawn,
// so per-vertex and per-trial streams are reproducible in any order.
class Rng {
public:
    using result_type = std::uint64_t;

    constexpr explicit Rng(std::uint64_t seed) noexcept : seed_(seed), state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr std::uint64_t seed() const noexcept { return seed_; }

    constexpr result_type operator()() noexcept {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    constexpr Rng split(std::uint64_t key) const noexcept {
        return Rng{mix(seed_ ^ mix(key * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL))};
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t seed_;
    std::uint64_t state_;
};

}  // namespace treeramsey
