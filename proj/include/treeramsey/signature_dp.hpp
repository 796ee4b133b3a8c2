#pragma once

// Signature families S(H) and regular embeddings (replicas) of T_d in H.
//
// A family over levels {0..n-1} is stored densely: one bit per subset of
// levels, 2^n bits in all. The bit index of a signature is its level mask
// read bottom-up (index bit j <-> level n-1-j). With that ordering the
// family of a subtree rooted at level λ occupies exactly the first
// 2^{n-λ} bits, and the recursion at a root at level λ is a concatenation:
//
//   low half  = S(H') ∪ S(H'')          (signatures without λ)
//   high half = S(H') ∩ S(H'')          (signatures with λ, root in H)
//
// so the whole DP is OR/AND over word runs; see simd/bitset_kernels.hpp.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "treeramsey/tree_core.hpp"

namespace treeramsey {

// Default cap on n for dense families (2^20 bits = 128 KiB per family).
inline constexpr int kDefaultFamilyDepthCap = 20;
// Hard ceiling; the cap can be raised up to this.
inline constexpr int kMaxFamilyDepth = 28;

// Set of T_n levels as a bitmask (bit i = level i).
class Signature {
public:
    constexpr Signature() = default;
    constexpr explicit Signature(std::uint64_t levels) : levels_(levels) {}

    static Signature from_levels(const std::vector<int>& levels);

    constexpr std::uint64_t mask() const noexcept { return levels_; }
    constexpr int size() const noexcept { return std::popcount(levels_); }
    constexpr bool empty() const noexcept { return levels_ == 0; }
    constexpr bool contains(int level) const noexcept { return ((levels_ >> level) & 1U) != 0; }
    constexpr bool is_subset_of(Signature other) const noexcept { return (levels_ & ~other.levels_) == 0; }
    // Lowest level, or -1 for the empty signature.
    constexpr int lowest() const noexcept { return levels_ == 0 ? -1 : std::countr_zero(levels_); }
    constexpr Signature with(int level) const noexcept { return Signature{levels_ | (std::uint64_t{1} << level)}; }
    constexpr Signature without(int level) const noexcept { return Signature{levels_ & ~(std::uint64_t{1} << level)}; }

    std::vector<int> levels() const;
    // "0,2,4"; empty string for ∅.
    std::string to_string() const;

    friend constexpr auto operator<=>(Signature, Signature) = default;

private:
    std::uint64_t levels_ = 0;
};

class SignatureFamily {
public:
    SignatureFamily() = default;
    // The family {∅} over levels {0..n-1}.
    explicit SignatureFamily(int depth);

    static SignatureFamily from_signatures(int depth, const std::vector<Signature>& members);
    // Adopts dense storage in bottom-up index order (see above).
    static SignatureFamily from_words(int depth, std::vector<std::uint64_t> words);

    int depth() const noexcept { return depth_; }
    bool contains(Signature s) const noexcept;
    std::uint64_t size() const;
    // Largest member size (max replica depth); 0 for {∅}.
    int max_size() const;
    // Members sorted by mask value.
    std::vector<Signature> members() const;
    // Members by decreasing size, ties by increasing mask.
    std::vector<Signature> members_by_size_desc() const;
    // Number of members of each size 0..n.
    std::vector<std::uint64_t> size_histogram() const;

    bool is_subset_of(const SignatureFamily& other) const;
    bool is_downward_closed() const;

    void insert(Signature s);

    std::span<const std::uint64_t> words() const noexcept { return words_; }

    friend bool operator==(const SignatureFamily&, const SignatureFamily&) = default;

    // Bottom-up bit index of a signature within a depth-n family.
    static std::uint64_t index_of(Signature s, int depth) noexcept;
    static Signature signature_at(std::uint64_t index, int depth) noexcept;

private:
    friend class FamilyBuilder;
    int depth_ = 0;
    std::vector<std::uint64_t> words_;
};

struct FamilyOptions {
    int depth_cap = kDefaultFamilyDepthCap;
};

// Exact S(H) in global level coordinates. ResourceLimitError when
// H.depth() > options.depth_cap.
SignatureFamily signature_set(const TreeSubset& subset, const FamilyOptions& options = {});

// Family of H restricted to the subtree rooted at v, still in global level
// coordinates (only levels >= level(v) can occur).
SignatureFamily subtree_signature_set(const TreeSubset& subset, VertexId root, const FamilyOptions& options = {});

int max_replica_depth(const TreeSubset& subset, const FamilyOptions& options = {});

// f: V(T_d) -> V(T_n); image[t-1] is the image of T_d vertex t (heap order).
struct EmbeddingWitness {
    int d = 0;
    int n = 0;
    std::vector<VertexId> image;
    Signature signature;

    VertexId operator()(VertexId t) const { return image.at(static_cast<std::size_t>(t - 1)); }
    friend bool operator==(const EmbeddingWitness&, const EmbeddingWitness&) = default;
};

// Top-down reconstruction of a witness for `target`. At a vertex whose level
// is the lowest remaining target level, the vertex itself is the image; else
// the search descends into the left child when its family holds the target,
// otherwise the right. NoWitnessError if target is not in S(H).
EmbeddingWitness extract_replica(const TreeSubset& subset, Signature target, const FamilyOptions& options = {});

// Some witness of depth exactly d, or nullopt if max_replica_depth(H) < d.
// Picks the smallest-mask signature of size d, else restricts a larger one.
std::optional<EmbeddingWitness> contains_replica(const TreeSubset& subset, int d, const FamilyOptions& options = {});

// Restricts a witness to a subset of its levels by composing with a regular
// embedding of T_{|sub|} into T_d (leftmost descendants). DomainError unless
// sub ⊆ w.signature.
EmbeddingWitness restrict_embedding(const EmbeddingWitness& w, Signature sub);

// True iff 2^w > Σ_{i<d} C(n, i), decided exactly.
bool theorem1_check(int n, int d, const DyadicWeight& w);

// Independent checker of the two regular-embedding conditions, signature
// consistency and (when given) membership of every image in H. Returns an
// empty string when valid, else a description of the first violation.
std::string validate_embedding(const EmbeddingWitness& w, const TreeSubset* subset = nullptr);

// Witness file: "d=<d> n=<n>", one "<source> -> <target>" line per T_d
// vertex in heap order, then "signature=<levels>".
std::string serialize_witness(const EmbeddingWitness& w);
EmbeddingWitness parse_witness(const std::string& text);

}  // namespace treeramsey
