#pragma once

// s-ary trees T_{n,s}, their signature families and weighted counts, and the
// reduction from bounded-arity trees with all leaves on one level to
// subsets of the binary tree (the g-map).

#include <cstdint>
#include <string>
#include <vector>

#include "treeramsey/exact_power.hpp"
#include "treeramsey/rng.hpp"
#include "treeramsey/signature_dp.hpp"
#include "treeramsey/tree_core.hpp"

namespace treeramsey {

// s^n must stay within this many vertices' worth of storage.
inline constexpr std::uint64_t kMaxSaryLeafSpan = std::uint64_t{1} << 22;

// Subset of V(T_{n,s}); root 0, children of v are s*v+1 .. s*v+s.
class SaryTreeSubset {
public:
    SaryTreeSubset() = default;
    SaryTreeSubset(int depth, int arity);

    static SaryTreeSubset full(int depth, int arity);

    int depth() const noexcept { return depth_; }
    int arity() const noexcept { return arity_; }
    std::uint64_t vertex_count() const noexcept { return level_start_.back(); }
    int level(std::uint64_t v) const;
    std::uint64_t level_start(int level) const { return level_start_.at(static_cast<std::size_t>(level)); }

    bool contains(std::uint64_t v) const noexcept { return v < members_.size() && members_[v]; }
    void insert(std::uint64_t v);
    void erase(std::uint64_t v);
    std::uint64_t count_at_level(int level) const;

    friend bool operator==(const SaryTreeSubset&, const SaryTreeSubset&) = default;

private:
    int depth_ = 0;
    int arity_ = 2;
    std::vector<std::uint64_t> level_start_{0};  // level_start_[l], plus total at the end
    std::vector<bool> members_;
};

// Exact Σ s^{-level(v)}.
Rational sary_weight(const SaryTreeSubset& subset);

// Exact family of signatures of regular s-ary embeddings into H.
SignatureFamily sary_signature_set(const SaryTreeSubset& subset, const FamilyOptions& options = {});

// Σ_{σ ∈ S} (s-1)^{-|σ|}.
Rational weighted_signature_count(const SignatureFamily& family, int arity);

// True iff (s/(s-1))^w > Σ_{i<d} C(n,i) / (s-1)^i, decided exactly.
bool theorem1prime_check(int n, int d, int arity, const Rational& w);

// A rooted tree with at most `arity` children per vertex whose leaves all
// sit on level depth-1 (the same level convention as T_n). Vertices are
// numbered breadth first from the root 0.
class GeneralTree {
public:
    GeneralTree() = default;
    // ValidationError unless the lists describe such a tree in BFS numbering.
    GeneralTree(int arity, int depth, std::vector<std::vector<std::uint32_t>> children);

    static GeneralTree full(int branching, int arity, int depth);

    int arity() const noexcept { return arity_; }
    int depth() const noexcept { return depth_; }
    std::uint32_t size() const noexcept { return static_cast<std::uint32_t>(children_.size()); }
    const std::vector<std::uint32_t>& children(std::uint32_t u) const { return children_.at(u); }
    std::uint32_t parent(std::uint32_t u) const { return parent_.at(u); }
    int level(std::uint32_t u) const { return level_.at(u); }
    std::uint64_t leaf_count(std::uint32_t u) const { return leaves_.at(u); }
    std::uint64_t leaf_count() const { return leaves_.at(0); }
    std::uint32_t ancestor_at_level(std::uint32_t u, int level) const;
    bool is_descendant(std::uint32_t u, std::uint32_t v) const;

private:
    int arity_ = 0;
    int depth_ = 0;
    std::vector<std::vector<std::uint32_t>> children_;
    std::vector<std::uint32_t> parent_;
    std::vector<int> level_;
    std::vector<std::uint64_t> leaves_;
};

// Every internal vertex gets a uniform number of children in [1, arity].
GeneralTree random_general_tree(int arity, int depth, const Rng& rng);

struct GMapResult {
    int n = 0;
    std::vector<std::uint32_t> image;  // image[v] for v in 1..2^n-1; image[0] unused
    TreeSubset h;                      // v with image[v] having 0 or >= 2 children

    std::uint32_t operator()(VertexId v) const { return image.at(static_cast<std::size_t>(v)); }
};

// g maps the root to the root; children of v go to the two children of g(v)
// with most leaf descendants (ties to the smaller index, the left child of v
// to the smaller index of the pair), or both to the only child.
GMapResult gmap_build(const GeneralTree& tree);

// True iff leafcount(T) <= s^{w(H) - 1}, decided exactly.
bool leafbound_check(const GeneralTree& tree, const GMapResult& result, int arity);

// g ∘ w as a map from V(T_d) into T (image[t-1]).
std::vector<std::uint32_t> transport_witness(const EmbeddingWitness& w, const GMapResult& result);

// Regular-embedding conditions for a map V(T_d) -> V(T). Empty when valid.
std::string validate_tree_embedding(const GeneralTree& tree, int d, const std::vector<std::uint32_t>& image);

// s-ary subset file: "n=<depth> s=<arity>", then the membership bits in hex,
// most significant digit first, least significant bit = vertex 0.
std::string serialize_sary_subset(const SaryTreeSubset& subset);
SaryTreeSubset parse_sary_subset(const std::string& text);

// Tree file: "s=<arity> n=<depth>", then "<index>: <children>" per vertex in BFS order.
std::string serialize_tree(const GeneralTree& tree);
GeneralTree parse_tree(const std::string& text);

}  // namespace treeramsey
