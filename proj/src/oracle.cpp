#include "treeramsey/oracle.hpp"

#include <bit>

#include "treeramsey/errors.hpp"

namespace treeramsey {

namespace {

class Backtracker {
public:
    Backtracker(const TreeSubset& subset, Signature signature,
                const std::function<bool(const EmbeddingWitness&)>& visit)
        : subset_(subset), levels_(signature.levels()), visit_(visit) {
        w_.d = static_cast<int>(levels_.size());
        w_.n = subset.depth();
        w_.signature = signature;
        w_.image.assign(static_cast<std::size_t>(vertex_count(w_.d)), 0);
    }

    bool run() {
        if (w_.d == 0) return visit_(w_);
        return place(1);
    }

private:
    // Assigns T_d vertex t (heap order), then everything after it.
    bool place(VertexId t) {
        if (t > vertex_count(w_.d)) return visit_(w_);
        const int target = levels_[static_cast<std::size_t>(vertex_level(t))];
        VertexId lo = first_at_level(target);
        VertexId hi = first_at_level(target + 1);
        if (t > 1) {
            // Below a child of the parent's image; the right sibling avoids
            // the child already used by the left one.
            const VertexId p = w_(t / 2);
            const int pl = vertex_level(p);
            const int gap = target - pl;
            const VertexId taken = (t & 1) != 0 ? ancestor_at_level(w_(t - 1), pl + 1) : 0;
            lo = p << gap;
            hi = (p + 1) << gap;
            for (VertexId x = lo; x < hi; ++x) {
                if (!subset_.contains(x)) continue;
                if (taken != 0 && ancestor_at_level(x, pl + 1) == taken) continue;
                w_.image[static_cast<std::size_t>(t - 1)] = x;
                if (!place(t + 1)) return false;
            }
            return true;
        }
        for (VertexId x = lo; x < hi; ++x) {
            if (!subset_.contains(x)) continue;
            w_.image[0] = x;
            if (!place(t + 1)) return false;
        }
        return true;
    }

    const TreeSubset& subset_;
    std::vector<int> levels_;
    const std::function<bool(const EmbeddingWitness&)>& visit_;
    EmbeddingWitness w_;
};

}  // namespace

bool oracle_visit(const TreeSubset& subset, Signature signature,
                  const std::function<bool(const EmbeddingWitness&)>& visit) {
    if (subset.depth() < 64 && (signature.mask() >> subset.depth()) != 0) {
        throw DomainError("signature uses levels outside T_n");
    }
    Backtracker b(subset, signature, visit);
    return b.run();
}

OracleResult oracle_enumerate(const TreeSubset& subset, int d) {
    const int n = subset.depth();
    if (n > kOracleMaxTreeDepth || d > kOracleMaxEmbedDepth) {
        throw ResourceLimitError("oracle enumeration is limited to n <= 6 and d <= 4");
    }
    if (d < 0) throw DomainError("d must be non-negative");
    OracleResult r;
    r.signatures = SignatureFamily(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        if (std::popcount(mask) != d) continue;
        oracle_visit(subset, Signature{mask}, [&](const EmbeddingWitness& w) {
            r.witnesses.push_back(w);
            r.signatures.insert(w.signature);
            return true;
        });
    }
    return r;
}

std::optional<EmbeddingWitness> oracle_find(const TreeSubset& subset, Signature signature) {
    std::optional<EmbeddingWitness> found;
    oracle_visit(subset, signature, [&](const EmbeddingWitness& w) {
        found = w;
        return false;
    });
    return found;
}

SignatureFamily oracle_signature_set(const TreeSubset& subset) {
    const int n = subset.depth();
    if (n > kOracleMaxTreeDepth) throw ResourceLimitError("oracle signature search is limited to n <= 6");
    SignatureFamily f(n);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        if (oracle_find(subset, Signature{mask})) f.insert(Signature{mask});
    }
    return f;
}

}  // namespace treeramsey
