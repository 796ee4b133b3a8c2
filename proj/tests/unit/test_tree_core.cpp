#include <doctest.h>

#include <vector>

#include "treeramsey/errors.hpp"
#include "treeramsey/experiments.hpp"
#include "treeramsey/rng.hpp"
#include "treeramsey/tree_core.hpp"

using namespace treeramsey;

TEST_CASE("vertex levels") {
    CHECK(vertex_level(1) == 0);
    CHECK(vertex_level(2) == 1);
    CHECK(vertex_level(3) == 1);
    CHECK(vertex_level(11) == 3);
    int hops = 0;
    for (VertexId v = 11; v > 1; v /= 2) ++hops;
    CHECK(hops == 3);
}

TEST_CASE("navigate") {
    const Navigation root = navigate(1, 3);
    REQUIRE(root.children);
    CHECK(root.children->first == 2);
    CHECK(root.children->second == 3);
    CHECK_FALSE(root.parent);
    CHECK_FALSE(root.is_leaf);

    const Navigation leaf = navigate(5, 3);
    CHECK(leaf.is_leaf);
    CHECK_FALSE(leaf.children);
    CHECK(*leaf.parent == 2);

    const Navigation mid = navigate(5, 4);
    CHECK(*mid.children == std::pair<VertexId, VertexId>{10, 11});
    CHECK(*mid.parent == 2);

    CHECK_THROWS_AS(navigate(8, 3), InvalidVertexError);
    CHECK_THROWS_AS(navigate(0, 3), InvalidVertexError);
}

TEST_CASE("descendant relation") {
    CHECK(is_descendant(5, 5));
    CHECK(is_descendant(11, 2));
    CHECK_FALSE(is_descendant(6, 2));
    CHECK_FALSE(is_descendant(2, 11));

    Rng rng(11);
    for (int i = 0; i < 2000; ++i) {
        const VertexId a = 1 + rng() % 255;
        const VertexId b = 1 + rng() % 255;
        const VertexId c = 1 + rng() % 255;
        if (is_descendant(a, b) && is_descendant(b, a)) CHECK(a == b);
        if (is_descendant(a, b) && is_descendant(b, c)) CHECK(is_descendant(a, c));
        // naive halving
        VertexId x = a;
        while (x > b) x /= 2;
        CHECK(is_descendant(a, b) == (x == b));
    }
}

TEST_CASE("branch") {
    CHECK(branch(4, 3) == std::vector<VertexId>{1, 2, 4});
    CHECK(branch(7, 3) == std::vector<VertexId>{1, 3, 7});
    CHECK(branch(13, 4) == std::vector<VertexId>{1, 3, 6, 13});
    CHECK_THROWS_AS(branch(3, 3), InvalidVertexError);
    for (VertexId leaf = 16; leaf < 32; ++leaf) {
        const auto path = branch(leaf, 5);
        REQUIRE(path.size() == 5);
        CHECK(path.front() == 1);
        for (std::size_t i = 1; i < path.size(); ++i) CHECK(path[i] / 2 == path[i - 1]);
    }
}

TEST_CASE("set weights") {
    CHECK(set_weight(TreeSubset::from_vertices(3, std::vector<VertexId>{1})) == DyadicWeight(1, 0));
    CHECK(set_weight(TreeSubset::full(3)) == DyadicWeight(3, 0));
    CHECK(set_weight(TreeSubset::leaves(4)) == DyadicWeight(1, 0));
    CHECK(set_weight(TreeSubset(0)) == DyadicWeight(0, 0));
    CHECK(DyadicWeight(6, 2).to_string() == "3/2^1");
    CHECK(DyadicWeight(8, 3).to_string() == "1");
    CHECK(DyadicWeight(3, 1) < DyadicWeight(7, 2));
    for (int n = 1; n <= 20; ++n) CHECK(set_weight(TreeSubset::full(n)) == DyadicWeight(static_cast<std::uint64_t>(n), 0));
}

TEST_CASE("weight splits over the root") {
    Rng rng(3);
    for (int t = 0; t < 200; ++t) {
        const int n = 2 + static_cast<int>(rng() % 19);
        const TreeSubset h = random_subset(n, 0.5, rng.split(static_cast<std::uint64_t>(t)));
        // Subtree weights relative to level 1, halved back into global terms.
        DyadicWeight left;
        DyadicWeight right;
        for (VertexId v : h.members()) {
            if (v == 1) continue;
            const DyadicWeight w(1, static_cast<unsigned>(vertex_level(v)));
            if (ancestor_at_level(v, 1) == 2) left = left + w;
            else right = right + w;
        }
        const DyadicWeight root(h.contains(1) ? 1 : 0, 0);
        CHECK(set_weight(h) == left + right + root);
    }
}

TEST_CASE("subset file round trip") {
    Rng rng(5);
    for (int n = 0; n <= 12; ++n) {
        const TreeSubset h = random_subset(n, 0.4, rng.split(static_cast<std::uint64_t>(n)));
        const std::string text = serialize_subset(h);
        CHECK(parse_subset(text) == h);
        CHECK(serialize_subset(parse_subset(text)) == text);
    }
    CHECK(serialize_subset(TreeSubset::full(3)) == "n=3\n7f\n");
    CHECK(serialize_subset(TreeSubset::from_vertices(2, std::vector<VertexId>{1})) == "n=2\n1\n");
    CHECK_THROWS_AS(parse_subset("n=2\nf\n"), ValidationError);   // bit 3 would be vertex 4
    CHECK_THROWS_AS(parse_subset("n=3\n7\n"), ValidationError);   // wrong digit count
    CHECK_THROWS_AS(parse_subset("depth=3\n7f\n"), ValidationError);
}

TEST_CASE("depth cap") {
    CHECK_THROWS_AS(TreeSubset(26), ResourceLimitError);
    CHECK_NOTHROW(TreeSubset(0));
}
