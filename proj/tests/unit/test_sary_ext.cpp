#include <doctest.h>

#include "treeramsey/errors.hpp"
#include "treeramsey/experiments.hpp"
#include "treeramsey/sary_ext.hpp"

using namespace treeramsey;

namespace {

// Pointwise existence straight from the definition: x is the image of a
// T_{|σ|,s} root with signature σ iff x ∈ H and below every child of x
// some vertex on the next level of σ is such a root for the rest of σ.
bool embeds_at(const SaryTreeSubset& h, std::uint64_t x, const std::vector<int>& levels, std::size_t from) {
    if (!h.contains(x)) return false;
    if (from + 1 == levels.size()) return true;
    const int s = h.arity();
    const int next = levels[from + 1];
    for (int i = 0; i < s; ++i) {
        std::uint64_t lo = x * static_cast<std::uint64_t>(s) + 1 + static_cast<std::uint64_t>(i);
        std::uint64_t hi = lo + 1;
        for (int l = levels[from] + 1; l < next; ++l) {
            lo = lo * static_cast<std::uint64_t>(s) + 1;
            hi = hi * static_cast<std::uint64_t>(s) + 1;
        }
        bool any = false;
        for (std::uint64_t y = lo; y < hi && !any; ++y) any = embeds_at(h, y, levels, from + 1);
        if (!any) return false;
    }
    return true;
}

SignatureFamily brute_sary(const SaryTreeSubset& h) {
    SignatureFamily f(h.depth());
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << h.depth()); ++mask) {
        const std::vector<int> levels = Signature{mask}.levels();
        bool found = false;
        for (std::uint64_t x = h.level_start(levels[0]); x < h.level_start(levels[0] + 1) && !found; ++x) {
            found = embeds_at(h, x, levels, 0);
        }
        if (found) f.insert(Signature{mask});
    }
    return f;
}

GeneralTree counterexample() {
    // s = 3, leaves on level 3: 7 leaves but w(H) = 11/4 and 3^{7/4} < 7.
    return GeneralTree(3, 4, {{1, 2, 3}, {4}, {5, 6, 7}, {8}, {9}, {10}, {11, 12, 13}, {14}, {15}, {}, {}, {}, {}, {}, {}, {}});
}

}  // namespace

TEST_CASE("s-ary subsets and weights") {
    SaryTreeSubset root(3, 3);
    root.insert(0);
    CHECK(sary_weight(root) == 1);
    CHECK(sary_weight(SaryTreeSubset::full(3, 3)) == 3);
    SaryTreeSubset deep(3, 3);
    deep.insert(deep.level_start(2) + 4);
    CHECK(sary_weight(deep) == Rational(1, 9));
    CHECK(SaryTreeSubset(3, 3).vertex_count() == 13);
    CHECK(root.level(0) == 0);
    CHECK(root.level(3) == 1);
    CHECK(root.level(4) == 2);
    CHECK_THROWS_AS(root.level(13), InvalidVertexError);
    CHECK_THROWS_AS(SaryTreeSubset(3, 1), DomainError);
    CHECK_THROWS_AS(SaryTreeSubset(12, 4), ResourceLimitError);  // 4^12 = 2^24
    CHECK_NOTHROW(SaryTreeSubset(11, 4));
}

TEST_CASE("s-ary signature families") {
    CHECK(sary_signature_set(SaryTreeSubset(3, 3)).size() == 1);
    const SignatureFamily f = sary_signature_set(SaryTreeSubset::full(2, 3));
    CHECK(f == SignatureFamily::from_signatures(2, {Signature{0}, Signature{1}, Signature{2}, Signature{3}}));

    Rng rng(31);
    for (int t = 0; t < 300; ++t) {
        Rng r = rng.split(static_cast<std::uint64_t>(t));
        const int s = 2 + static_cast<int>(r() % 3);
        const int n = 1 + static_cast<int>(r() % (s == 2 ? 6 : s == 3 ? 5 : 4));
        const SaryTreeSubset h = random_sary_subset(n, s, 0.4 + 0.6 * r.uniform(), r.split(1));
        const SignatureFamily dp = sary_signature_set(h);
        REQUIRE(dp == brute_sary(h));
        CHECK(dp.is_downward_closed());
    }
}

TEST_CASE("s = 2 matches the binary recursion") {
    Rng rng(37);
    for (int t = 0; t < 100; ++t) {
        const int n = 1 + t % 14;
        const TreeSubset h = random_subset(n, 0.7, rng.split(static_cast<std::uint64_t>(t)));
        SaryTreeSubset hs(n, 2);
        for (VertexId v : h.members()) hs.insert(v - 1);
        CHECK(sary_signature_set(hs) == signature_set(h));
        CHECK(sary_weight(hs) == to_rational(set_weight(h)));
    }
}

TEST_CASE("weighted signature count") {
    const SignatureFamily four = SignatureFamily::from_signatures(2, {Signature{0}, Signature{1}, Signature{2}, Signature{3}});
    CHECK(weighted_signature_count(SignatureFamily(3), 5) == 1);
    CHECK(weighted_signature_count(four, 3) == Rational(9, 4));
    CHECK(weighted_signature_count(four, 2) == 4);
}

TEST_CASE("s-ary weight threshold") {
    CHECK(theorem1prime_check(2, 2, 3, Rational(2)));
    CHECK_FALSE(theorem1prime_check(2, 2, 3, Rational(1)));
    for (int n = 1; n <= 12; ++n) {
        for (int d = 1; d <= 4; ++d) {
            for (std::uint64_t num = 0; num <= 64; ++num) {
                const DyadicWeight w(num * static_cast<std::uint64_t>(n), 4);
                CHECK(theorem1prime_check(n, d, 2, to_rational(w)) == theorem1_check(n, d, w));
            }
        }
    }
    CHECK_THROWS_AS(theorem1prime_check(3, 0, 3, Rational(1)), DomainError);
}

TEST_CASE("s-ary weighted chain and threshold soundness") {
    for (int s = 2; s <= 4; ++s) {
        for (int n = 1; n <= (s == 4 ? 6 : 7); ++n) {
            CHECK(verify_lemma3prime(n, s, 40, Rng(static_cast<std::uint64_t>(100 * s + n))).ok());
        }
    }
    Rng rng(53);
    for (int t = 0; t < 400; ++t) {
        Rng r = rng.split(static_cast<std::uint64_t>(t));
        const int n = 1 + static_cast<int>(r() % 5);
        const SaryTreeSubset h = random_sary_subset(n, 3, r.uniform(), r.split(1));
        const SignatureFamily f = sary_signature_set(h);
        for (int d = 1; d <= n; ++d) {
            if (theorem1prime_check(n, d, 3, sary_weight(h))) CHECK(f.max_size() >= d);
        }
    }
}

TEST_CASE("general tree validation") {
    CHECK_NOTHROW(GeneralTree(2, 2, {{1, 2}, {}, {}}));
    CHECK_THROWS_AS(GeneralTree(1, 2, {{1, 2}, {}, {}}), ValidationError);        // arity
    CHECK_THROWS_AS(GeneralTree(2, 3, {{1, 2}, {3}, {}, {}}), ValidationError);   // leaf 2 above level 2
    CHECK_THROWS_AS(GeneralTree(2, 2, {{2, 1}, {}, {}}), ValidationError);        // not breadth first
    CHECK_THROWS_AS(GeneralTree(2, 2, {{1}, {2}, {}}), ValidationError);          // too deep
    const GeneralTree t = counterexample();
    CHECK(t.leaf_count() == 7);
    CHECK(t.leaf_count(2) == 5);
    CHECK(t.level(15) == 3);
    CHECK(t.parent(11) == 6);
    CHECK(t.is_descendant(13, 2));
    CHECK_FALSE(t.is_descendant(13, 1));
    CHECK(parse_tree(serialize_tree(t)).leaf_count() == 7);
    CHECK(serialize_tree(parse_tree(serialize_tree(t))) == serialize_tree(t));
    CHECK_THROWS_AS(parse_tree("s=2 n=2\n0: 1 2\n1:\n"), ValidationError);
    CHECK_THROWS_AS(parse_tree("n=2\n"), ValidationError);
}

TEST_CASE("random trees") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const GeneralTree t = random_general_tree(3, 6, Rng(seed));
        CHECK(t.depth() == 6);
        for (std::uint32_t u = 0; u < t.size(); ++u) {
            CHECK(t.children(u).size() <= 3);
            if (t.children(u).empty()) CHECK(t.level(u) == 5);
        }
    }
    CHECK(serialize_tree(random_general_tree(3, 5, Rng(4))) == serialize_tree(random_general_tree(3, 5, Rng(4))));
}

TEST_CASE("g-map on full binary trees and paths") {
    for (int n = 1; n <= 8; ++n) {
        const GeneralTree full = GeneralTree::full(2, 2, n);
        const GMapResult g = gmap_build(full);
        CHECK(g.h == TreeSubset::full(n));
        CHECK(set_weight(g.h) == DyadicWeight(static_cast<std::uint64_t>(n), 0));
        CHECK(full.leaf_count() == (std::uint64_t{1} << (n - 1)));
        CHECK(leafbound_check(full, g, 2));
        for (VertexId v = 1; v < g.image.size(); ++v) CHECK(full.level(g(v)) == vertex_level(v));

        const GeneralTree path = GeneralTree::full(1, 3, n);
        const GMapResult gp = gmap_build(path);
        CHECK(gp.h == TreeSubset::leaves(n));
        CHECK(set_weight(gp.h) == DyadicWeight(1, 0));
        CHECK(leafbound_check(path, gp, 3));
    }
}

TEST_CASE("g-map tie breaks") {
    const GMapResult g = gmap_build(counterexample());
    CHECK(g(1) == 0);
    CHECK(g(2) == 1);  // 1 and 3 tie on one leaf; 1 is smaller and pairs with 2
    CHECK(g(3) == 2);
    CHECK(g(6) == 5);
    CHECK(g(7) == 6);
    CHECK(g(14) == 11);
    CHECK(g(15) == 12);
    CHECK(set_weight(g.h) == DyadicWeight(11, 2));
}

TEST_CASE("leaf bound fails on a three-way split") {
    const GeneralTree t = counterexample();
    const GMapResult g = gmap_build(t);
    // 7 > 3^{7/4} ~ 6.84
    CHECK(compare_power(Rational(3), Rational(7, 4), Rational(7)) < 0);
    CHECK_FALSE(leafbound_check(t, g, 3));
}

TEST_CASE("transported replicas stay regular") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const GeneralTree t = random_general_tree(3, 7, Rng(seed));
        const GMapResult g = gmap_build(t);
        for (int d = 1; d <= max_replica_depth(g.h); ++d) {
            const auto w = contains_replica(g.h, d);
            REQUIRE(w);
            CHECK(validate_tree_embedding(t, d, transport_witness(*w, g)).empty());
        }
    }
    const GeneralTree t = GeneralTree::full(2, 2, 3);
    CHECK_FALSE(validate_tree_embedding(t, 2, {0, 3, 4}).empty());  // same child of the root
    CHECK_FALSE(validate_tree_embedding(t, 2, {0, 1, 5}).empty());  // levels differ
    CHECK(validate_tree_embedding(t, 2, {0, 3, 5}).empty());
}

TEST_CASE("w(H) grows with the leaf count") {
    // leafcount >= 2^{αn} forces w(H) > αn / log2 s whenever the leaf bound holds.
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const GeneralTree t = random_general_tree(3, 8, Rng(seed));
        const GMapResult g = gmap_build(t);
        if (!leafbound_check(t, g, 3)) continue;
        const double alpha = std::log2(static_cast<double>(t.leaf_count())) / 8;
        CHECK(set_weight(g.h).to_double() >= alpha * 8 / std::log2(3.0) + 1 - 1e-12);
    }
}

TEST_CASE("s-ary subset file round trip") {
    const SaryTreeSubset h = random_sary_subset(4, 3, 0.5, Rng(3));
    CHECK(parse_sary_subset(serialize_sary_subset(h)) == h);
    CHECK_THROWS_AS(parse_sary_subset("n=2 s=3\nff\n"), ValidationError);
}
