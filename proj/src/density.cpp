#include "treeramsey/density.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "treeramsey/errors.hpp"

namespace treeramsey {

double binary_entropy(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw DomainError("binary entropy needs ε in [0, 1]");
    if (epsilon == 0.0 || epsilon == 1.0) return 0.0;
    return -epsilon * std::log2(epsilon) - (1.0 - epsilon) * std::log2(1.0 - epsilon);
}

double inv_entropy(double delta) {
    if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("inverse entropy needs δ in (0, 1]");
    if (delta == 1.0) return 0.5;
    double lo = 0.0;
    double hi = 0.5;
    // h is strictly increasing on [0, 1/2]; 80 halvings reach double resolution.
    for (int i = 0; i < 80 && hi - lo > 0; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (binary_entropy(mid) < delta) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

ChernoffResult chernoff_check(int n, double epsilon) {
    if (n < 1) throw DomainError("chernoff_check needs n >= 1");
    if (!(epsilon > 0.0 && epsilon < 0.5)) throw DomainError("chernoff_check needs ε in (0, 1/2)");
    ChernoffResult r;
    // εn within rounding of an integer counts as that integer (0.05 * 3 * 20 is not 3 in floating point).
    const double en = epsilon * n;
    const double nearest = std::round(en);
    r.d = static_cast<int>(std::fabs(en - nearest) <= 1e-9 * std::max(1.0, en) ? nearest : std::ceil(en));
    r.d = std::max(r.d, 1);
    r.sum = binomial_prefix_sum(static_cast<unsigned>(n), static_cast<unsigned>(r.d));
    r.bound_log2 = binary_entropy(epsilon) * n;
    const double margin = r.bound_log2 - log2_big(r.sum);
    if (std::fabs(margin) > 1e-9) {
        r.holds = margin > 0;
    } else {
        // The float bound is itself a dyadic rational; decide 2^bound > sum exactly.
        const auto [p, e] = exact_dyadic(r.bound_log2);
        r.holds = compare_pow2(p, e, r.sum) > 0;
    }
    return r;
}

Signature ArithmeticProgression::as_signature() const {
    std::uint64_t mask = 0;
    for (int i = 0; i < length; ++i) mask |= std::uint64_t{1} << term(i);
    return Signature{mask};
}

namespace {

std::vector<int> sorted_unique(std::vector<int> xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

}  // namespace

ArithmeticProgression longest_ap(const std::vector<int>& levels) {
    const std::vector<int> xs = sorted_unique(levels);
    if (xs.empty()) throw DomainError("longest_ap of an empty set");
    ArithmeticProgression best{xs.front(), 0, 1};
    // run[j][b]: length of the longest AP with difference b ending at xs[j].
    std::vector<std::map<int, int>> run(xs.size());
    for (std::size_t j = 0; j < xs.size(); ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            const int b = xs[j] - xs[i];
            const auto prev = run[i].find(b);
            const int len = (prev == run[i].end() ? 1 : prev->second) + 1;
            run[j][b] = std::max(run[j][b], len);
            const ArithmeticProgression cand{xs[j] - (len - 1) * b, b, len};
            const bool better = cand.length > best.length ||
                                (cand.length == best.length &&
                                 (cand.b < best.b || (cand.b == best.b && cand.a < best.a)));
            if (better) best = cand;
        }
    }
    return best;
}

std::optional<ArithmeticProgression> find_ap(const std::vector<int>& levels, int length) {
    if (length < 1) throw DomainError("AP length must be positive");
    const std::vector<int> xs = sorted_unique(levels);
    if (xs.empty()) return std::nullopt;
    if (length == 1) return ArithmeticProgression{xs.front(), 0, 1};
    std::vector<bool> present(static_cast<std::size_t>(xs.back() - xs.front()) + 1, false);
    for (int x : xs) present[static_cast<std::size_t>(x - xs.front())] = true;
    const int span = xs.back() - xs.front();
    for (int b = 1; (length - 1) * b <= span; ++b) {
        for (int a : xs) {
            const int last = a + (length - 1) * b;
            if (last > xs.back()) break;
            bool ok = true;
            for (int i = 1; i < length && ok; ++i) ok = present[static_cast<std::size_t>(a + i * b - xs.front())];
            if (ok) return ArithmeticProgression{a, b, length};
        }
    }
    return std::nullopt;
}

EmbeddingWitness restrict_replica(const EmbeddingWitness& w, Signature sub) { return restrict_embedding(w, sub); }

std::optional<ArithmeticReplica> arithmetic_replica(const TreeSubset& subset, int l, const FamilyOptions& options) {
    if (l < 1) throw DomainError("arithmetic replica length must be positive");
    const SignatureFamily family = signature_set(subset, options);
    for (Signature s : family.members_by_size_desc()) {
        if (s.size() < l) break;
        const auto ap = find_ap(s.levels(), l);
        if (!ap) continue;
        const EmbeddingWitness full = extract_replica(subset, s, options);
        return ArithmeticReplica{*ap, restrict_replica(full, ap->as_signature()), s};
    }
    return std::nullopt;
}

DensityReport density_pipeline(const TreeSubset& subset, double delta, int l, const FamilyOptions& options) {
    DensityReport report;
    report.delta = delta;
    report.epsilon = inv_entropy(delta);
    const int n = subset.depth();
    report.guaranteed_depth = static_cast<int>(std::floor(report.epsilon * n));
    const DyadicWeight w = set_weight(subset);
    report.weight_condition = w.to_double() >= delta * n;
    if (report.guaranteed_depth >= 1) report.threshold_certified = theorem1_check(n, report.guaranteed_depth, w);
    report.max_depth = max_replica_depth(subset, options);
    report.replica = arithmetic_replica(subset, l, options);
    return report;
}

std::string ap_verdict(const std::optional<ArithmeticReplica>& r) {
    if (!r) return "NONE";
    return "ARITHMETIC_REPLICA a=" + std::to_string(r->progression.a) + " b=" + std::to_string(r->progression.b) +
           " l=" + std::to_string(r->progression.length);
}

}  // namespace treeramsey
