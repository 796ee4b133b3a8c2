#include "treeramsey/signature_dp.hpp"

#include <algorithm>
#include <sstream>

#include "treeramsey/errors.hpp"
#include "treeramsey/exact_power.hpp"
#include "treeramsey/simd/bitset_kernels.hpp"

namespace treeramsey {

namespace {

constexpr int kWordLog = 6;  // 64 bits per word

std::size_t family_words(int levels) {
    return levels <= kWordLog ? 1 : std::size_t{1} << (levels - kWordLog);
}

std::uint64_t reverse_low_bits(std::uint64_t x, int width) {
    if (width == 0) return 0;
    x = ((x >> 1) & 0x5555555555555555ULL) | ((x & 0x5555555555555555ULL) << 1);
    x = ((x >> 2) & 0x3333333333333333ULL) | ((x & 0x3333333333333333ULL) << 2);
    x = ((x >> 4) & 0x0F0F0F0F0F0F0F0FULL) | ((x & 0x0F0F0F0F0F0F0F0FULL) << 4);
    x = ((x >> 8) & 0x00FF00FF00FF00FFULL) | ((x & 0x00FF00FF00FF00FFULL) << 8);
    x = ((x >> 16) & 0x0000FFFF0000FFFFULL) | ((x & 0x0000FFFF0000FFFFULL) << 16);
    x = (x >> 32) | (x << 32);
    return x >> (64 - width);
}

bool test_bit(std::span<const std::uint64_t> words, std::uint64_t index) {
    const std::size_t w = index >> kWordLog;
    return w < words.size() && ((words[w] >> (index & 63)) & 1U) != 0;
}

void check_family_depth(int depth, const FamilyOptions& options) {
    const int cap = std::min(options.depth_cap, kMaxFamilyDepth);
    if (depth > cap) {
        throw ResourceLimitError("signature family depth " + std::to_string(depth) + " exceeds cap " +
                                 std::to_string(cap));
    }
}

}  // namespace

// Runs the subtree recursion. Subtrees of up to six levels have families of
// at most 64 bits and are combined in a single register; larger ones use
// the word kernels with one scratch buffer per subtree height.
class FamilyBuilder {
public:
    explicit FamilyBuilder(const TreeSubset& subset) : subset_(subset), n_(subset.depth()) {
        scratch_.resize(static_cast<std::size_t>(n_) + 1);
        for (int m = kWordLog + 1; m <= n_; ++m) scratch_[static_cast<std::size_t>(m)].resize(family_words(m));
    }

    // Family of the subtree at `root` (m = n - level(root) levels) in local
    // storage of family_words(m) words.
    std::vector<std::uint64_t> build(VertexId root) {
        const int m = n_ - vertex_level(root);
        std::vector<std::uint64_t> out(family_words(m));
        if (m <= kWordLog) out[0] = small(root, m);
        else large(root, m, out.data());
        return out;
    }

private:
    std::uint64_t small(VertexId v, int m) const {
        if (m == 0) return 1;
        const bool in_h = subset_.contains(v);
        if (m == 1) return in_h ? 0b11 : 0b01;
        const std::uint64_t left = small(2 * v, m - 1);
        const std::uint64_t right = small(2 * v + 1, m - 1);
        const std::uint64_t merged = left | right;
        return in_h ? merged | ((left & right) << (1U << (m - 1))) : merged;
    }

    void large(VertexId v, int m, std::uint64_t* out) {
        const std::size_t half = family_words(m) / 2;
        std::uint64_t* high = out + half;
        const bool in_h = subset_.contains(v);
        if (m - 1 <= kWordLog) {
            const std::uint64_t left = small(2 * v, m - 1);
            const std::uint64_t right = small(2 * v + 1, m - 1);
            out[0] = left | right;
            out[1] = in_h ? (left & right) : 0;
            return;
        }
        std::uint64_t* right = scratch_[static_cast<std::size_t>(m - 1)].data();
        large(2 * v, m - 1, out);
        large(2 * v + 1, m - 1, right);
        const auto& k = simd::active_kernels();
        if (in_h) k.and_words(high, out, right, half);
        else std::fill(high, high + half, 0);
        k.or_words(out, out, right, half);
    }

    const TreeSubset& subset_;
    int n_;
    std::vector<std::vector<std::uint64_t>> scratch_;
};

// -- Signature ---------------------------------------------------------------

Signature Signature::from_levels(const std::vector<int>& levels) {
    std::uint64_t mask = 0;
    for (int level : levels) {
        if (level < 0 || level > 63) throw DomainError("signature level out of range");
        mask |= std::uint64_t{1} << level;
    }
    return Signature{mask};
}

std::vector<int> Signature::levels() const {
    std::vector<int> out;
    for (std::uint64_t m = levels_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
}

std::string Signature::to_string() const {
    std::string out;
    for (int level : levels()) {
        if (!out.empty()) out += ',';
        out += std::to_string(level);
    }
    return out;
}

// -- SignatureFamily ---------------------------------------------------------

SignatureFamily::SignatureFamily(int depth) : depth_(depth) {
    if (depth < 0) throw DomainError("family depth must be non-negative");
    if (depth > kMaxFamilyDepth) throw ResourceLimitError("family depth exceeds hard cap");
    words_.assign(family_words(depth), 0);
    words_[0] = 1;  // ∅
}

SignatureFamily SignatureFamily::from_signatures(int depth, const std::vector<Signature>& members) {
    SignatureFamily f(depth);
    for (Signature s : members) f.insert(s);
    return f;
}

SignatureFamily SignatureFamily::from_words(int depth, std::vector<std::uint64_t> words) {
    SignatureFamily f(depth);
    if (words.size() != f.words_.size()) throw DomainError("family storage has the wrong size");
    if (depth < kWordLog && (words[0] >> (std::uint64_t{1} << depth)) != 0) {
        throw DomainError("family storage has bits beyond 2^depth");
    }
    f.words_ = std::move(words);
    return f;
}

std::uint64_t SignatureFamily::index_of(Signature s, int depth) noexcept {
    return reverse_low_bits(s.mask(), depth);
}

Signature SignatureFamily::signature_at(std::uint64_t index, int depth) noexcept {
    return Signature{reverse_low_bits(index, depth)};
}

bool SignatureFamily::contains(Signature s) const noexcept {
    if (depth_ < 64 && (s.mask() >> depth_) != 0) return false;
    return test_bit(words_, index_of(s, depth_));
}

void SignatureFamily::insert(Signature s) {
    if (depth_ < 64 && (s.mask() >> depth_) != 0) throw DomainError("signature has a level outside the family");
    const std::uint64_t index = index_of(s, depth_);
    words_[index >> kWordLog] |= std::uint64_t{1} << (index & 63);
}

std::uint64_t SignatureFamily::size() const { return simd::popcount(words_); }

int SignatureFamily::max_size() const {
    int best = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        for (std::uint64_t bits = words_[w]; bits != 0; bits &= bits - 1) {
            const std::uint64_t index = (w << kWordLog) | static_cast<std::uint64_t>(std::countr_zero(bits));
            best = std::max(best, std::popcount(index));
        }
    }
    return best;
}

std::vector<Signature> SignatureFamily::members() const {
    std::vector<Signature> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::size_t w = 0; w < words_.size(); ++w) {
        for (std::uint64_t bits = words_[w]; bits != 0; bits &= bits - 1) {
            const std::uint64_t index = (w << kWordLog) | static_cast<std::uint64_t>(std::countr_zero(bits));
            out.push_back(signature_at(index, depth_));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Signature> SignatureFamily::members_by_size_desc() const {
    std::vector<Signature> out = members();
    std::stable_sort(out.begin(), out.end(), [](Signature a, Signature b) { return a.size() > b.size(); });
    return out;
}

std::vector<std::uint64_t> SignatureFamily::size_histogram() const {
    std::vector<std::uint64_t> hist(static_cast<std::size_t>(depth_) + 1, 0);
    for (std::size_t w = 0; w < words_.size(); ++w) {
        for (std::uint64_t bits = words_[w]; bits != 0; bits &= bits - 1) {
            const std::uint64_t index = (w << kWordLog) | static_cast<std::uint64_t>(std::countr_zero(bits));
            ++hist[static_cast<std::size_t>(std::popcount(index))];
        }
    }
    return hist;
}

bool SignatureFamily::is_subset_of(const SignatureFamily& other) const {
    if (depth_ != other.depth_) throw DomainError("families over different depths");
    return simd::is_subset(words_, other.words_);
}

bool SignatureFamily::is_downward_closed() const {
    for (Signature s : members()) {
        for (int level : s.levels()) {
            if (!contains(s.without(level))) return false;
        }
    }
    return true;
}

// -- DP entry points -----------------------------------------------------------

SignatureFamily signature_set(const TreeSubset& subset, const FamilyOptions& options) {
    return subtree_signature_set(subset, 1, options);
}

SignatureFamily subtree_signature_set(const TreeSubset& subset, VertexId root, const FamilyOptions& options) {
    const int n = subset.depth();
    check_family_depth(n, options);
    if (n == 0) return SignatureFamily(0);
    if (root < 1 || root > subset.vertex_count()) {
        throw InvalidVertexError("vertex " + std::to_string(root) + " is not in T_" + std::to_string(n));
    }
    FamilyBuilder builder(subset);
    std::vector<std::uint64_t> words(family_words(n), 0);
    const std::vector<std::uint64_t> local = builder.build(root);
    std::copy(local.begin(), local.end(), words.begin());
    return SignatureFamily::from_words(n, std::move(words));
}

int max_replica_depth(const TreeSubset& subset, const FamilyOptions& options) {
    return signature_set(subset, options).max_size();
}

namespace {

class Extractor {
public:
    Extractor(const TreeSubset& subset, EmbeddingWitness& out) : subset_(subset), builder_(subset), out_(out) {}

    bool holds(VertexId v, Signature s) {
        return test_bit(builder_.build(v), SignatureFamily::index_of(s, subset_.depth()));
    }

    void run(VertexId v, Signature s, VertexId t) {
        if (s.empty()) return;
        const int level = vertex_level(v);
        if (s.lowest() == level) {
            out_.image[static_cast<std::size_t>(t - 1)] = v;
            const Signature rest = s.without(level);
            if (rest.empty()) return;
            run(2 * v, rest, 2 * t);
            run(2 * v + 1, rest, 2 * t + 1);
            return;
        }
        if (holds(2 * v, s)) run(2 * v, s, t);
        else run(2 * v + 1, s, t);
    }

private:
    const TreeSubset& subset_;
    FamilyBuilder builder_;
    EmbeddingWitness& out_;
};

}  // namespace

EmbeddingWitness extract_replica(const TreeSubset& subset, Signature target, const FamilyOptions& options) {
    const int n = subset.depth();
    check_family_depth(n, options);
    EmbeddingWitness w;
    w.n = n;
    w.d = target.size();
    w.signature = target;
    w.image.assign(static_cast<std::size_t>(vertex_count(w.d)), 0);
    if (target.empty()) return w;
    if (n < 64 && (target.mask() >> n) != 0) throw NoWitnessError("target signature has levels outside T_n");
    Extractor extractor(subset, w);
    if (!extractor.holds(1, target)) {
        throw NoWitnessError("signature {" + target.to_string() + "} is not in S(H)");
    }
    extractor.run(1, target, 1);
    return w;
}

std::optional<EmbeddingWitness> contains_replica(const TreeSubset& subset, int d, const FamilyOptions& options) {
    if (d < 0) throw DomainError("replica depth must be non-negative");
    const SignatureFamily family = signature_set(subset, options);
    if (d == 0) return extract_replica(subset, Signature{}, options);
    std::optional<Signature> exact;
    std::optional<Signature> larger;
    for (Signature s : family.members()) {
        if (s.size() == d && !exact) exact = s;
        if (s.size() > d && (!larger || s.size() < larger->size())) larger = s;
    }
    if (exact) return extract_replica(subset, *exact, options);
    if (!larger) return std::nullopt;
    const EmbeddingWitness big = extract_replica(subset, *larger, options);
    std::uint64_t lowest_d = 0;
    std::uint64_t mask = larger->mask();
    for (int i = 0; i < d; ++i, mask &= mask - 1) lowest_d |= mask & (~mask + 1);
    return restrict_embedding(big, Signature{lowest_d});
}

EmbeddingWitness restrict_embedding(const EmbeddingWitness& w, Signature sub) {
    if (!sub.is_subset_of(w.signature)) {
        throw DomainError("restriction levels {" + sub.to_string() + "} are not a subset of the witness signature {" +
                          w.signature.to_string() + "}");
    }
    // Positions of the kept levels among the witness's T_d levels.
    const std::vector<int> all = w.signature.levels();
    std::vector<int> keep;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (sub.contains(all[i])) keep.push_back(static_cast<int>(i));
    }
    EmbeddingWitness r;
    r.n = w.n;
    r.d = static_cast<int>(keep.size());
    r.signature = sub;
    r.image.assign(static_cast<std::size_t>(vertex_count(r.d)), 0);
    if (r.d == 0) return r;

    // source[t] = T_d vertex standing in for T_l vertex t.
    std::vector<VertexId> source(static_cast<std::size_t>(vertex_count(r.d)) + 1, 0);
    source[1] = first_at_level(keep[0]);
    for (VertexId t = 1; t <= vertex_count(r.d); ++t) {
        const int j = vertex_level(t);
        r.image[static_cast<std::size_t>(t - 1)] = w(source[t]);
        if (j + 1 >= r.d) continue;
        const int gap = keep[static_cast<std::size_t>(j) + 1] - keep[static_cast<std::size_t>(j)] - 1;
        source[2 * t] = (2 * source[t]) << gap;
        source[2 * t + 1] = (2 * source[t] + 1) << gap;
    }
    return r;
}

bool theorem1_check(int n, int d, const DyadicWeight& w) {
    if (d < 1) throw DomainError("theorem1_check requires d >= 1");
    if (n < 0) throw DomainError("theorem1_check requires n >= 0");
    const BigInt threshold = binomial_prefix_sum(static_cast<unsigned>(n), static_cast<unsigned>(d));
    return compare_pow2(w, threshold) > 0;
}

std::string validate_embedding(const EmbeddingWitness& w, const TreeSubset* subset) {
    std::ostringstream err;
    if (w.d < 0 || w.d > 63) return "depth out of range";
    if (w.image.size() != vertex_count(w.d)) {
        err << "map has " << w.image.size() << " entries, expected " << vertex_count(w.d);
        return err.str();
    }
    if (subset != nullptr && subset->depth() != w.n) return "witness depth n differs from the subset's tree";
    std::vector<int> level_of(static_cast<std::size_t>(w.d), -1);
    for (VertexId t = 1; t <= vertex_count(w.d); ++t) {
        const VertexId x = w(t);
        if (x < 1 || x > vertex_count(w.n)) {
            err << "image of " << t << " is " << x << ", outside T_" << w.n;
            return err.str();
        }
        if (subset != nullptr && !subset->contains(x)) {
            err << "image of " << t << " is " << x << ", not in H";
            return err.str();
        }
        int& expected = level_of[static_cast<std::size_t>(vertex_level(t))];
        if (expected == -1) expected = vertex_level(x);
        if (expected != vertex_level(x)) {
            err << "level condition fails at T_d level " << vertex_level(t);
            return err.str();
        }
    }
    for (VertexId t = 1; 2 * t + 1 <= vertex_count(w.d); ++t) {
        const VertexId x = w(t);
        const VertexId y = w(2 * t);
        const VertexId z = w(2 * t + 1);
        const int below = vertex_level(x) + 1;
        if (vertex_level(y) < below || vertex_level(z) < below || !is_descendant(y, x) || !is_descendant(z, x)) {
            err << "children of " << t << " are not below its image";
            return err.str();
        }
        if (ancestor_at_level(y, below) == ancestor_at_level(z, below)) {
            err << "children of " << t << " fall under the same child of " << x;
            return err.str();
        }
    }
    std::uint64_t levels = 0;
    for (int l : level_of) levels |= std::uint64_t{1} << l;
    if (levels != w.signature.mask() || w.signature.size() != w.d) {
        err << "signature {" << w.signature.to_string() << "} does not match the image levels";
        return err.str();
    }
    return {};
}

std::string serialize_witness(const EmbeddingWitness& w) {
    std::ostringstream os;
    os << "d=" << w.d << " n=" << w.n << "\n";
    for (VertexId t = 1; t <= vertex_count(w.d); ++t) os << t << " -> " << w(t) << "\n";
    os << "signature=" << w.signature.to_string() << "\n";
    return os.str();
}

EmbeddingWitness parse_witness(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    EmbeddingWitness w;
    if (!std::getline(in, line)) throw ValidationError("witness file: empty");
    {
        std::istringstream header(line);
        std::string dpart;
        std::string npart;
        header >> dpart >> npart;
        if (dpart.rfind("d=", 0) != 0 || npart.rfind("n=", 0) != 0) {
            throw ValidationError("witness file: expected 'd=<depth> n=<depth>'");
        }
        try {
            w.d = std::stoi(dpart.substr(2));
            w.n = std::stoi(npart.substr(2));
        } catch (const std::logic_error&) {
            throw ValidationError("witness file: bad header numbers");
        }
        if (w.d < 0 || w.d > 30 || w.n < 0 || w.n > 63) throw ValidationError("witness file: depth out of range");
    }
    w.image.assign(static_cast<std::size_t>(vertex_count(w.d)), 0);
    for (VertexId t = 1; t <= vertex_count(w.d); ++t) {
        if (!std::getline(in, line)) throw ValidationError("witness file: truncated map");
        std::istringstream row(line);
        VertexId src = 0;
        VertexId dst = 0;
        std::string arrow;
        if (!(row >> src >> arrow >> dst) || arrow != "->" || src != t) {
            throw ValidationError("witness file: bad map line '" + line + "'");
        }
        w.image[static_cast<std::size_t>(t - 1)] = dst;
    }
    if (!std::getline(in, line) || line.rfind("signature=", 0) != 0) {
        throw ValidationError("witness file: missing signature line");
    }
    std::vector<int> levels;
    std::istringstream list(line.substr(10));
    std::string item;
    while (std::getline(list, item, ',')) {
        try {
            levels.push_back(std::stoi(item));
        } catch (const std::logic_error&) {
            throw ValidationError("witness file: bad signature level '" + item + "'");
        }
    }
    try {
        w.signature = Signature::from_levels(levels);
    } catch (const DomainError& e) {
        throw ValidationError(std::string("witness file: ") + e.what());
    }
    return w;
}

}  // namespace treeramsey
