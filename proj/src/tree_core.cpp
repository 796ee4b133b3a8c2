#include "treeramsey/tree_core.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "treeramsey/errors.hpp"

namespace treeramsey {

namespace {

std::string vertex_message(VertexId v, int depth) {
    std::ostringstream os;
    os << "vertex " << v << " is not in T_" << depth;
    return os.str();
}

std::uint64_t level_bits(const std::vector<std::uint64_t>& words, int level) {
    // Level `level` occupies storage bits [2^level, 2^{level+1}).
    const VertexId first = first_at_level(level);
    if (level < 6) {
        const std::uint64_t mask = ((std::uint64_t{1} << first) - 1) << first;
        return static_cast<std::uint64_t>(std::popcount(words[0] & mask));
    }
    std::uint64_t total = 0;
    for (std::size_t w = first >> 6, end = (first << 1) >> 6; w < end; ++w) {
        total += static_cast<std::uint64_t>(std::popcount(words[w]));
    }
    return total;
}

}  // namespace

void check_depth(int depth, int cap) {
    if (depth < 0) throw DomainError("tree depth must be non-negative");
    if (depth > cap) {
        throw ResourceLimitError("tree depth " + std::to_string(depth) + " exceeds cap " + std::to_string(cap));
    }
}

Navigation navigate(VertexId v, int depth) {
    if (v < 1 || v > vertex_count(depth)) throw InvalidVertexError(vertex_message(v, depth));
    Navigation nav;
    nav.is_leaf = vertex_level(v) == depth - 1;
    if (!nav.is_leaf) nav.children = std::make_pair(2 * v, 2 * v + 1);
    if (v > 1) nav.parent = v / 2;
    return nav;
}

std::vector<VertexId> branch(VertexId leaf, int depth) {
    if (leaf < 1 || leaf > vertex_count(depth) || vertex_level(leaf) != depth - 1) {
        throw InvalidVertexError("vertex " + std::to_string(leaf) + " is not a leaf of T_" + std::to_string(depth));
    }
    std::vector<VertexId> path(static_cast<std::size_t>(depth));
    for (int level = depth - 1; level >= 0; --level, leaf >>= 1) path[static_cast<std::size_t>(level)] = leaf;
    return path;
}

// -- DyadicWeight ------------------------------------------------------------

DyadicWeight DyadicWeight::normalized() const noexcept {
    if (numerator_ == 0) return {};
    const unsigned shift = std::min<unsigned>(static_cast<unsigned>(std::countr_zero(numerator_)), log2_denominator_);
    return {numerator_ >> shift, log2_denominator_ - shift};
}

double DyadicWeight::to_double() const noexcept {
    return std::ldexp(static_cast<double>(numerator_), -static_cast<int>(log2_denominator_));
}

std::string DyadicWeight::to_string() const {
    const DyadicWeight w = normalized();
    if (w.log2_denominator_ == 0) return std::to_string(w.numerator_);
    return std::to_string(w.numerator_) + "/2^" + std::to_string(w.log2_denominator_);
}

std::strong_ordering operator<=>(const DyadicWeight& a, const DyadicWeight& b) noexcept {
    const unsigned e = std::max(a.log2_denominator_, b.log2_denominator_);
    const boost::multiprecision::cpp_int x = boost::multiprecision::cpp_int(a.numerator_) << (e - a.log2_denominator_);
    const boost::multiprecision::cpp_int y = boost::multiprecision::cpp_int(b.numerator_) << (e - b.log2_denominator_);
    const int c = x.compare(y);
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

DyadicWeight operator+(const DyadicWeight& a, const DyadicWeight& b) {
    const unsigned e = std::max(a.log2_denominator(), b.log2_denominator());
    const unsigned sa = e - a.log2_denominator();
    const unsigned sb = e - b.log2_denominator();
    if (std::bit_width(a.numerator()) + sa >= 64 || std::bit_width(b.numerator()) + sb >= 64) {
        throw ResourceLimitError("dyadic weight overflow");
    }
    return DyadicWeight{(a.numerator() << sa) + (b.numerator() << sb), e}.normalized();
}

// -- TreeSubset --------------------------------------------------------------

TreeSubset::TreeSubset(int depth) : depth_(depth) {
    check_depth(depth);
    // Storage bit v for v in [1, 2^n); one word minimum keeps bit arithmetic uniform.
    const std::size_t bits = std::size_t{1} << depth;
    words_.assign(std::max<std::size_t>(1, (bits + 63) / 64), 0);
}

TreeSubset TreeSubset::full(int depth) {
    TreeSubset h(depth);
    for (VertexId v = 1; v <= h.vertex_count(); ++v) h.words_[v >> 6] |= std::uint64_t{1} << (v & 63);
    return h;
}

TreeSubset TreeSubset::leaves(int depth) {
    TreeSubset h(depth);
    if (depth == 0) return h;
    for (VertexId v = first_at_level(depth - 1); v <= h.vertex_count(); ++v) {
        h.words_[v >> 6] |= std::uint64_t{1} << (v & 63);
    }
    return h;
}

TreeSubset TreeSubset::from_vertices(int depth, std::span<const VertexId> vertices) {
    TreeSubset h(depth);
    for (VertexId v : vertices) h.insert(v);
    return h;
}

void TreeSubset::check_vertex(VertexId v) const {
    if (v < 1 || v > vertex_count()) throw InvalidVertexError(vertex_message(v, depth_));
}

void TreeSubset::insert(VertexId v) {
    check_vertex(v);
    words_[v >> 6] |= std::uint64_t{1} << (v & 63);
}

void TreeSubset::erase(VertexId v) {
    check_vertex(v);
    words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
}

std::uint64_t TreeSubset::size() const noexcept {
    std::uint64_t total = 0;
    for (std::uint64_t w : words_) total += static_cast<std::uint64_t>(std::popcount(w));
    return total;
}

std::uint64_t TreeSubset::count_at_level(int level) const noexcept {
    if (level < 0 || level >= depth_) return 0;
    return level_bits(words_, level);
}

std::vector<VertexId> TreeSubset::members() const {
    std::vector<VertexId> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        for (std::uint64_t bits = words_[w]; bits != 0; bits &= bits - 1) {
            out.push_back((w << 6) | static_cast<VertexId>(std::countr_zero(bits)));
        }
    }
    return out;
}

bool TreeSubset::is_subset_of(const TreeSubset& other) const {
    if (depth_ != other.depth_) throw DomainError("subsets of trees with different depths");
    for (std::size_t w = 0; w < words_.size(); ++w) {
        if ((words_[w] & ~other.words_[w]) != 0) return false;
    }
    return true;
}

DyadicWeight set_weight(const TreeSubset& subset) {
    const int n = subset.depth();
    if (n == 0) return {};
    std::uint64_t numerator = 0;
    for (int level = 0; level < n; ++level) {
        numerator += subset.count_at_level(level) << (n - 1 - level);
    }
    return DyadicWeight{numerator, static_cast<unsigned>(n - 1)};
}

// -- Subset file format ------------------------------------------------------

std::string serialize_subset(const TreeSubset& subset) {
    const int n = subset.depth();
    const VertexId bits = subset.vertex_count();
    const std::size_t digits = static_cast<std::size_t>((bits + 3) / 4);
    std::string hex(digits, '0');
    static constexpr char kDigits[] = "0123456789abcdef";
    for (std::size_t d = 0; d < digits; ++d) {
        // Digit d (from the right) holds file bits 4d..4d+3, i.e. vertices 4d+1..4d+4.
        unsigned nibble = 0;
        for (unsigned b = 0; b < 4; ++b) {
            const VertexId v = 4 * d + b + 1;
            if (v <= bits && subset.contains(v)) nibble |= 1U << b;
        }
        hex[digits - 1 - d] = kDigits[nibble];
    }
    return "n=" + std::to_string(n) + "\n" + hex + "\n";
}

TreeSubset parse_subset(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    std::string hex;
    if (!std::getline(in, header) || header.rfind("n=", 0) != 0) {
        throw ValidationError("subset file: expected header line 'n=<depth>'");
    }
    int n = 0;
    try {
        std::size_t used = 0;
        n = std::stoi(header.substr(2), &used);
        if (used != header.size() - 2) throw ValidationError("subset file: trailing characters in header");
    } catch (const std::logic_error&) {
        throw ValidationError("subset file: bad depth in header");
    }
    TreeSubset subset(n);
    std::getline(in, hex);
    std::string rest;
    while (std::getline(in, rest)) {
        if (!rest.empty()) throw ValidationError("subset file: unexpected trailing content");
    }
    const VertexId bits = subset.vertex_count();
    const std::size_t digits = static_cast<std::size_t>((bits + 3) / 4);
    if (hex.size() != digits) {
        throw ValidationError("subset file: expected " + std::to_string(digits) + " hex digits, got " +
                              std::to_string(hex.size()));
    }
    for (std::size_t d = 0; d < digits; ++d) {
        const char c = hex[digits - 1 - d];
        unsigned nibble = 0;
        if (c >= '0' && c <= '9') nibble = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f') nibble = static_cast<unsigned>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') nibble = static_cast<unsigned>(c - 'A' + 10);
        else throw ValidationError(std::string("subset file: invalid hex digit '") + c + "'");
        for (unsigned b = 0; b < 4; ++b) {
            if (((nibble >> b) & 1U) == 0) continue;
            const VertexId v = 4 * d + b + 1;
            if (v > bits) throw ValidationError("subset file: bit set beyond vertex 2^n - 1");
            subset.insert(v);
        }
    }
    return subset;
}

TreeSubset read_subset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open subset file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_subset(buf.str());
}

void write_subset_file(const std::string& path, const TreeSubset& subset) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write subset file " + path);
    out << serialize_subset(subset);
}

}  // namespace treeramsey
