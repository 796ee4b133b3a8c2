#pragma once

// Complete binary trees T_n with heap-indexed vertices: root 1, children of v
// are 2v and 2v+1, and level(v) = floor(log2 v). The bits of v after its
// leading one spell the root-to-v path (0 = left).

#include <bit>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace treeramsey {

using VertexId = std::uint64_t;

// Full-tree storage cap: a T_25 membership bitset is 4 MiB.
inline constexpr int kMaxTreeDepth = 25;

constexpr int vertex_level(VertexId v) noexcept { return std::bit_width(v) - 1; }

constexpr VertexId first_at_level(int level) noexcept { return VertexId{1} << level; }

constexpr VertexId vertex_count(int depth) noexcept { return (VertexId{1} << depth) - 1; }

// Ancestor of v at the given level (v itself when level == vertex_level(v)).
constexpr VertexId ancestor_at_level(VertexId v, int level) noexcept {
    return v >> (vertex_level(v) - level);
}

// Every vertex is a descendant of itself.
constexpr bool is_descendant(VertexId u, VertexId v) noexcept {
    if (u < v || v == 0) return false;
    return ancestor_at_level(u, vertex_level(v)) == v;
}

struct Navigation {
    std::optional<std::pair<VertexId, VertexId>> children;
    std::optional<VertexId> parent;
    bool is_leaf = false;
};

// Throws InvalidVertexError unless 1 <= v < 2^n.
Navigation navigate(VertexId v, int depth);

// Root-to-leaf path of exactly n vertices. Throws InvalidVertexError if leaf
// is not at level n-1.
std::vector<VertexId> branch(VertexId leaf, int depth);

void check_depth(int depth, int cap = kMaxTreeDepth);

// Exact value numerator / 2^log2_denominator.
class DyadicWeight {
public:
    constexpr DyadicWeight() = default;
    constexpr DyadicWeight(std::uint64_t numerator, unsigned log2_denominator)
        : numerator_(numerator), log2_denominator_(log2_denominator) {}

    constexpr std::uint64_t numerator() const noexcept { return numerator_; }
    constexpr unsigned log2_denominator() const noexcept { return log2_denominator_; }

    // Lowest terms: odd numerator or zero exponent.
    DyadicWeight normalized() const noexcept;
    double to_double() const noexcept;
    // "p" for integers, "p/2^e" otherwise (always normalized).
    std::string to_string() const;

    friend std::strong_ordering operator<=>(const DyadicWeight& a, const DyadicWeight& b) noexcept;
    friend bool operator==(const DyadicWeight& a, const DyadicWeight& b) noexcept {
        return (a <=> b) == std::strong_ordering::equal;
    }
    friend DyadicWeight operator+(const DyadicWeight& a, const DyadicWeight& b);

private:
    std::uint64_t numerator_ = 0;
    unsigned log2_denominator_ = 0;
};

// H ⊆ V(T_n). Bit v of the storage is vertex v; bit 0 is never set.
class TreeSubset {
public:
    TreeSubset() = default;
    explicit TreeSubset(int depth);

    static TreeSubset full(int depth);
    static TreeSubset leaves(int depth);
    static TreeSubset from_vertices(int depth, std::span<const VertexId> vertices);

    int depth() const noexcept { return depth_; }
    VertexId vertex_count() const noexcept { return treeramsey::vertex_count(depth_); }

    bool contains(VertexId v) const noexcept {
        return v >= 1 && v <= vertex_count() && ((words_[v >> 6] >> (v & 63)) & 1U) != 0;
    }
    void insert(VertexId v);
    void erase(VertexId v);

    std::uint64_t size() const noexcept;
    std::uint64_t count_at_level(int level) const noexcept;
    bool empty() const noexcept { return size() == 0; }
    std::vector<VertexId> members() const;

    bool is_subset_of(const TreeSubset& other) const;

    std::span<const std::uint64_t> words() const noexcept { return words_; }

    friend bool operator==(const TreeSubset&, const TreeSubset&) = default;

private:
    void check_vertex(VertexId v) const;

    int depth_ = 0;
    std::vector<std::uint64_t> words_;
};

// Exact sum of 2^{-level(v)} over v in H, over the common denominator 2^{n-1}.
DyadicWeight set_weight(const TreeSubset& subset);

// Subset file: line 1 "n=<depth>", line 2 the membership bitset in hex,
// most significant digit first, least significant bit = vertex 1, exactly
// ceil((2^n - 1) / 4) lowercase digits.
std::string serialize_subset(const TreeSubset& subset);
TreeSubset parse_subset(const std::string& text);
TreeSubset read_subset_file(const std::string& path);
void write_subset_file(const std::string& path, const TreeSubset& subset);

}  // namespace treeramsey
