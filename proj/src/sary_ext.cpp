#include "treeramsey/sary_ext.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "treeramsey/errors.hpp"
#include "treeramsey/simd/bitset_kernels.hpp"

namespace treeramsey {

namespace {

constexpr int kWordLog = 6;

std::size_t family_words(int levels) {
    return levels <= kWordLog ? 1 : std::size_t{1} << (levels - kWordLog);
}

// Same recursion as the binary builder, with OR/AND folded over s children.
class SaryFamilyBuilder {
public:
    explicit SaryFamilyBuilder(const SaryTreeSubset& subset) : subset_(subset), n_(subset.depth()) {
        scratch_.resize(static_cast<std::size_t>(n_) + 1);
        for (int m = kWordLog + 1; m <= n_; ++m) scratch_[static_cast<std::size_t>(m)].resize(family_words(m));
    }

    std::vector<std::uint64_t> build() {
        std::vector<std::uint64_t> out(family_words(n_));
        if (n_ == 0) out[0] = 1;
        else if (n_ <= kWordLog) out[0] = small(0, n_);
        else large(0, n_, out.data());
        return out;
    }

private:
    std::uint64_t first_child(std::uint64_t v) const { return v * static_cast<std::uint64_t>(subset_.arity()) + 1; }

    std::uint64_t small(std::uint64_t v, int m) const {
        const bool in_h = subset_.contains(v);
        if (m == 1) return in_h ? 0b11 : 0b01;
        std::uint64_t any = 0;
        std::uint64_t all = ~std::uint64_t{0};
        const std::uint64_t c0 = first_child(v);
        for (int i = 0; i < subset_.arity(); ++i) {
            const std::uint64_t f = small(c0 + static_cast<std::uint64_t>(i), m - 1);
            any |= f;
            all &= f;
        }
        return in_h ? any | (all << (1U << (m - 1))) : any;
    }

    void large(std::uint64_t v, int m, std::uint64_t* out) {
        const std::size_t half = family_words(m) / 2;
        std::uint64_t* high = out + half;
        const bool in_h = subset_.contains(v);
        const std::uint64_t c0 = first_child(v);
        if (m - 1 <= kWordLog) {
            std::uint64_t any = 0;
            std::uint64_t all = ~std::uint64_t{0};
            for (int i = 0; i < subset_.arity(); ++i) {
                const std::uint64_t f = small(c0 + static_cast<std::uint64_t>(i), m - 1);
                any |= f;
                all &= f;
            }
            out[0] = any;
            out[1] = in_h ? all : 0;
            return;
        }
        const auto& k = simd::active_kernels();
        std::uint64_t* child = scratch_[static_cast<std::size_t>(m - 1)].data();
        large(c0, m - 1, out);
        if (in_h) std::copy(out, out + half, high);
        else std::fill(high, high + half, 0);
        for (int i = 1; i < subset_.arity(); ++i) {
            large(c0 + static_cast<std::uint64_t>(i), m - 1, child);
            if (in_h) k.and_words(high, high, child, half);
            k.or_words(out, out, child, half);
        }
    }

    const SaryTreeSubset& subset_;
    int n_;
    std::vector<std::vector<std::uint64_t>> scratch_;
};

}  // namespace

// -- SaryTreeSubset ----------------------------------------------------------

SaryTreeSubset::SaryTreeSubset(int depth, int arity) : depth_(depth), arity_(arity) {
    if (arity < 2) throw DomainError("arity must be at least 2");
    if (depth < 0) throw DomainError("depth must be non-negative");
    std::uint64_t width = 1;  // s^l
    level_start_.assign(1, 0);
    for (int l = 0; l < depth; ++l) {
        level_start_.push_back(level_start_.back() + width);
        if (l + 1 < depth) {
            width *= static_cast<std::uint64_t>(arity);
            if (width > kMaxSaryLeafSpan) {
                throw ResourceLimitError("s-ary tree exceeds the storage cap s^n <= 2^22");
            }
        }
    }
    if (depth > 0 && width * static_cast<std::uint64_t>(arity) > kMaxSaryLeafSpan) {
        throw ResourceLimitError("s-ary tree exceeds the storage cap s^n <= 2^22");
    }
    members_.assign(static_cast<std::size_t>(level_start_.back()), false);
}

SaryTreeSubset SaryTreeSubset::full(int depth, int arity) {
    SaryTreeSubset h(depth, arity);
    std::fill(h.members_.begin(), h.members_.end(), true);
    return h;
}

int SaryTreeSubset::level(std::uint64_t v) const {
    if (v >= vertex_count()) throw InvalidVertexError("vertex " + std::to_string(v) + " is not in T_{n,s}");
    const auto it = std::upper_bound(level_start_.begin(), level_start_.end(), v);
    return static_cast<int>(it - level_start_.begin()) - 1;
}

void SaryTreeSubset::insert(std::uint64_t v) {
    if (v >= vertex_count()) throw InvalidVertexError("vertex " + std::to_string(v) + " is not in T_{n,s}");
    members_[v] = true;
}

void SaryTreeSubset::erase(std::uint64_t v) {
    if (v >= vertex_count()) throw InvalidVertexError("vertex " + std::to_string(v) + " is not in T_{n,s}");
    members_[v] = false;
}

std::uint64_t SaryTreeSubset::count_at_level(int level) const {
    if (level < 0 || level >= depth_) return 0;
    std::uint64_t c = 0;
    for (std::uint64_t v = level_start_[static_cast<std::size_t>(level)];
         v < level_start_[static_cast<std::size_t>(level) + 1]; ++v) {
        c += members_[v] ? 1 : 0;
    }
    return c;
}

Rational sary_weight(const SaryTreeSubset& subset) {
    Rational total = 0;
    BigInt scale = 1;  // s^l
    for (int l = 0; l < subset.depth(); ++l) {
        total += Rational(BigInt(subset.count_at_level(l)), scale);
        scale *= subset.arity();
    }
    return total;
}

SignatureFamily sary_signature_set(const SaryTreeSubset& subset, const FamilyOptions& options) {
    const int cap = std::min(options.depth_cap, kMaxFamilyDepth);
    if (subset.depth() > cap) {
        throw ResourceLimitError("signature family depth " + std::to_string(subset.depth()) + " exceeds cap " +
                                 std::to_string(cap));
    }
    SaryFamilyBuilder builder(subset);
    return SignatureFamily::from_words(subset.depth(), builder.build());
}

Rational weighted_signature_count(const SignatureFamily& family, int arity) {
    if (arity < 2) throw DomainError("arity must be at least 2");
    const std::vector<std::uint64_t> hist = family.size_histogram();
    Rational total = 0;
    BigInt scale = 1;  // (s-1)^k
    for (std::size_t k = 0; k < hist.size(); ++k) {
        total += Rational(BigInt(hist[k]), scale);
        scale *= arity - 1;
    }
    return total;
}

bool theorem1prime_check(int n, int d, int arity, const Rational& w) {
    if (d < 1) throw DomainError("theorem1prime_check requires d >= 1");
    if (arity < 2) throw DomainError("arity must be at least 2");
    if (n < 0) throw DomainError("n must be non-negative");
    Rational rhs = 0;
    BigInt scale = 1;
    for (int i = 0; i < d; ++i) {
        rhs += Rational(binomial(static_cast<unsigned>(n), static_cast<unsigned>(i)), scale);
        scale *= arity - 1;
    }
    const Rational base(BigInt(arity), BigInt(arity - 1));
    return compare_power(base, w, rhs) > 0;
}

// -- GeneralTree -------------------------------------------------------------

GeneralTree::GeneralTree(int arity, int depth, std::vector<std::vector<std::uint32_t>> children)
    : arity_(arity), depth_(depth), children_(std::move(children)) {
    if (arity < 1) throw ValidationError("tree: arity must be positive");
    if (depth < 1) throw ValidationError("tree: depth must be positive");
    if (children_.empty()) throw ValidationError("tree: no vertices");
    const auto count = static_cast<std::uint32_t>(children_.size());
    parent_.assign(count, 0);
    level_.assign(count, -1);
    level_[0] = 0;
    // BFS numbering: concatenating the child lists in vertex order yields 1, 2, ..., count-1.
    std::uint32_t next = 1;
    for (std::uint32_t u = 0; u < count; ++u) {
        if (level_[u] < 0) throw ValidationError("tree: vertex " + std::to_string(u) + " is unreachable");
        const auto& kids = children_[u];
        if (kids.size() > static_cast<std::size_t>(arity)) {
            throw ValidationError("tree: vertex " + std::to_string(u) + " has more than " + std::to_string(arity) +
                                  " children");
        }
        if (kids.empty() && level_[u] != depth - 1) {
            throw ValidationError("tree: leaf " + std::to_string(u) + " is on level " + std::to_string(level_[u]) +
                                  ", expected " + std::to_string(depth - 1));
        }
        if (!kids.empty() && level_[u] >= depth - 1) {
            throw ValidationError("tree: vertex " + std::to_string(u) + " extends below level " +
                                  std::to_string(depth - 1));
        }
        for (std::uint32_t c : kids) {
            if (c != next || c >= count) throw ValidationError("tree: children are not in breadth-first numbering");
            parent_[c] = u;
            level_[c] = level_[u] + 1;
            ++next;
        }
    }
    if (next != count) throw ValidationError("tree: vertex count does not match the child lists");
    leaves_.assign(count, 0);
    for (std::uint32_t u = count; u-- > 0;) {
        if (children_[u].empty()) leaves_[u] = 1;
        for (std::uint32_t c : children_[u]) leaves_[u] += leaves_[c];
    }
}

GeneralTree GeneralTree::full(int branching, int arity, int depth) {
    std::vector<std::vector<std::uint32_t>> children(1);
    std::vector<std::uint32_t> frontier{0};
    for (int l = 0; l + 1 < depth; ++l) {
        std::vector<std::uint32_t> next;
        for (std::uint32_t u : frontier) {
            for (int i = 0; i < branching; ++i) {
                const auto c = static_cast<std::uint32_t>(children.size());
                children.emplace_back();
                children[u].push_back(c);
                next.push_back(c);
            }
        }
        frontier = std::move(next);
    }
    return GeneralTree(arity, depth, std::move(children));
}

std::uint32_t GeneralTree::ancestor_at_level(std::uint32_t u, int level) const {
    while (level_.at(u) > level) u = parent_[u];
    return u;
}

bool GeneralTree::is_descendant(std::uint32_t u, std::uint32_t v) const {
    return level(u) >= level(v) && ancestor_at_level(u, level(v)) == v;
}

GeneralTree random_general_tree(int arity, int depth, const Rng& rng) {
    Rng stream = rng;
    std::vector<std::vector<std::uint32_t>> children(1);
    std::deque<std::pair<std::uint32_t, int>> queue{{0, 0}};
    while (!queue.empty()) {
        const auto [u, level] = queue.front();
        queue.pop_front();
        if (level == depth - 1) continue;
        const auto k = 1 + static_cast<int>(stream() % static_cast<std::uint64_t>(arity));
        for (int i = 0; i < k; ++i) {
            const auto c = static_cast<std::uint32_t>(children.size());
            children.emplace_back();
            children[u].push_back(c);
            queue.emplace_back(c, level + 1);
        }
    }
    return GeneralTree(arity, depth, std::move(children));
}

// -- g-map -------------------------------------------------------------------

GMapResult gmap_build(const GeneralTree& tree) {
    const int n = tree.depth();
    check_depth(n);
    GMapResult r;
    r.n = n;
    r.h = TreeSubset(n);
    r.image.assign(static_cast<std::size_t>(vertex_count(n)) + 1, 0);
    r.image[1] = 0;
    for (VertexId v = 1; v <= vertex_count(n); ++v) {
        const std::uint32_t u = r.image[v];
        const auto& kids = tree.children(u);
        if (kids.size() != 1) r.h.insert(v);
        if (vertex_level(v) == n - 1) continue;
        if (kids.size() == 1) {
            r.image[2 * v] = r.image[2 * v + 1] = kids[0];
            continue;
        }
        // Two children with the most leaves, ties to the smaller index.
        std::vector<std::uint32_t> order(kids.begin(), kids.end());
        std::partial_sort(order.begin(), order.begin() + 2, order.end(), [&](std::uint32_t a, std::uint32_t b) {
            if (tree.leaf_count(a) != tree.leaf_count(b)) return tree.leaf_count(a) > tree.leaf_count(b);
            return a < b;
        });
        r.image[2 * v] = std::min(order[0], order[1]);
        r.image[2 * v + 1] = std::max(order[0], order[1]);
    }
    return r;
}

bool leafbound_check(const GeneralTree& tree, const GMapResult& result, int arity) {
    if (arity < 2) throw DomainError("arity must be at least 2");
    const Rational exponent = to_rational(set_weight(result.h)) - 1;
    return compare_power(Rational(arity), exponent, Rational(BigInt(tree.leaf_count()))) >= 0;
}

std::vector<std::uint32_t> transport_witness(const EmbeddingWitness& w, const GMapResult& result) {
    if (w.n != result.n) throw DomainError("witness and g-map live in different trees");
    std::vector<std::uint32_t> out;
    out.reserve(w.image.size());
    for (VertexId x : w.image) out.push_back(result(x));
    return out;
}

std::string validate_tree_embedding(const GeneralTree& tree, int d, const std::vector<std::uint32_t>& image) {
    if (image.size() != vertex_count(d)) return "map has the wrong number of entries";
    for (std::uint32_t u : image) {
        if (u >= tree.size()) return "image outside the tree";
    }
    auto at = [&](VertexId t) { return image[static_cast<std::size_t>(t - 1)]; };
    std::vector<int> level_of(static_cast<std::size_t>(d), -1);
    for (VertexId t = 1; t <= vertex_count(d); ++t) {
        int& expected = level_of[static_cast<std::size_t>(vertex_level(t))];
        if (expected == -1) expected = tree.level(at(t));
        if (expected != tree.level(at(t))) return "level condition fails at T_d level " + std::to_string(vertex_level(t));
    }
    for (VertexId t = 1; 2 * t + 1 <= vertex_count(d); ++t) {
        const std::uint32_t x = at(t);
        const std::uint32_t y = at(2 * t);
        const std::uint32_t z = at(2 * t + 1);
        const int below = tree.level(x) + 1;
        if (tree.level(y) < below || tree.level(z) < below || !tree.is_descendant(y, x) || !tree.is_descendant(z, x)) {
            return "children of " + std::to_string(t) + " are not below its image";
        }
        if (tree.ancestor_at_level(y, below) == tree.ancestor_at_level(z, below)) {
            return "children of " + std::to_string(t) + " fall under the same child of " + std::to_string(x);
        }
    }
    return {};
}

std::string serialize_tree(const GeneralTree& tree) {
    std::ostringstream os;
    os << "s=" << tree.arity() << " n=" << tree.depth() << "\n";
    for (std::uint32_t u = 0; u < tree.size(); ++u) {
        os << u << ":";
        for (std::uint32_t c : tree.children(u)) os << ' ' << c;
        os << "\n";
    }
    return os.str();
}

GeneralTree parse_tree(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("tree file: empty");
    int arity = 0;
    int depth = 0;
    {
        std::istringstream header(line);
        std::string spart;
        std::string npart;
        header >> spart >> npart;
        if (spart.rfind("s=", 0) != 0 || npart.rfind("n=", 0) != 0) {
            throw ValidationError("tree file: expected header 's=<arity> n=<depth>'");
        }
        try {
            arity = std::stoi(spart.substr(2));
            depth = std::stoi(npart.substr(2));
        } catch (const std::logic_error&) {
            throw ValidationError("tree file: bad header numbers");
        }
    }
    std::vector<std::vector<std::uint32_t>> children;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos) throw ValidationError("tree file: missing ':' in '" + line + "'");
        std::uint32_t index = 0;
        try {
            index = static_cast<std::uint32_t>(std::stoul(line.substr(0, colon)));
        } catch (const std::logic_error&) {
            throw ValidationError("tree file: bad vertex index in '" + line + "'");
        }
        if (index != children.size()) throw ValidationError("tree file: vertices must be listed in order");
        std::istringstream row(line.substr(colon + 1));
        std::vector<std::uint32_t> kids;
        long long c = 0;
        while (row >> c) {
            if (c < 0) throw ValidationError("tree file: negative child index");
            kids.push_back(static_cast<std::uint32_t>(c));
        }
        if (!row.eof()) throw ValidationError("tree file: bad child list in '" + line + "'");
        children.push_back(std::move(kids));
    }
    return GeneralTree(arity, depth, std::move(children));
}

}  // namespace treeramsey

namespace treeramsey {

std::string serialize_sary_subset(const SaryTreeSubset& subset) {
    const std::uint64_t count = subset.vertex_count();
    const std::uint64_t digits = std::max<std::uint64_t>(1, (count + 3) / 4);
    std::string hex(static_cast<std::size_t>(digits), '0');
    for (std::uint64_t i = 0; i < digits; ++i) {
        unsigned nibble = 0;
        for (unsigned b = 0; b < 4; ++b) {
            if (subset.contains(4 * i + b)) nibble |= 1U << b;
        }
        hex[static_cast<std::size_t>(digits - 1 - i)] = "0123456789abcdef"[nibble];
    }
    return "n=" + std::to_string(subset.depth()) + " s=" + std::to_string(subset.arity()) + "\n" + hex + "\n";
}

SaryTreeSubset parse_sary_subset(const std::string& text) {
    std::istringstream in(text);
    std::string npart;
    std::string spart;
    std::string hex;
    if (!(in >> npart >> spart >> hex) || npart.rfind("n=", 0) != 0 || spart.rfind("s=", 0) != 0) {
        throw ValidationError("s-ary subset file: expected 'n=<depth> s=<arity>' and a hex line");
    }
    int depth = 0;
    int arity = 0;
    try {
        depth = std::stoi(npart.substr(2));
        arity = std::stoi(spart.substr(2));
    } catch (const std::logic_error&) {
        throw ValidationError("s-ary subset file: bad header numbers");
    }
    SaryTreeSubset h(depth, arity);
    const std::uint64_t digits = std::max<std::uint64_t>(1, (h.vertex_count() + 3) / 4);
    if (hex.size() != digits) throw ValidationError("s-ary subset file: expected " + std::to_string(digits) + " hex digits");
    for (std::uint64_t i = 0; i < digits; ++i) {
        const char c = hex[static_cast<std::size_t>(digits - 1 - i)];
        unsigned nibble = 0;
        if (c >= '0' && c <= '9') nibble = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f') nibble = static_cast<unsigned>(c - 'a' + 10);
        else throw ValidationError("s-ary subset file: bad hex digit");
        for (unsigned b = 0; b < 4; ++b) {
            if ((nibble >> b & 1U) == 0) continue;
            if (4 * i + b >= h.vertex_count()) throw ValidationError("s-ary subset file: bits beyond the last vertex");
            h.insert(4 * i + b);
        }
    }
    return h;
}

}  // namespace treeramsey
