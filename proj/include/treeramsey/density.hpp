#pragma once

// Density pipeline: binary entropy, the entropy bound on partial binomial
// sums, arithmetic progressions among levels, and arithmetic replicas.

#include <optional>
#include <string>
#include <vector>

#include "treeramsey/exact_power.hpp"
#include "treeramsey/signature_dp.hpp"

namespace treeramsey {

// -ε log2 ε - (1-ε) log2(1-ε), with 0 log 0 = 0. DomainError outside [0, 1].
double binary_entropy(double epsilon);

// The ε in (0, 1/2] with h(ε) = δ, by bisection to well below 1e-12.
double inv_entropy(double delta);

struct ChernoffResult {
    int d = 0;             // ceil(ε n)
    BigInt sum;            // Σ_{i<d} C(n, i)
    double bound_log2 = 0;  // h(ε) n
    bool holds = false;    // log2(sum) < h(ε) n
};

ChernoffResult chernoff_check(int n, double epsilon);

struct ArithmeticProgression {
    int a = 0;
    int b = 0;
    int length = 0;

    int term(int i) const { return a + i * b; }
    Signature as_signature() const;
    friend bool operator==(const ArithmeticProgression&, const ArithmeticProgression&) = default;
};

// Longest AP inside the set; ties by smallest b, then smallest a. A set of
// one element gives (a, 0, 1). DomainError on an empty set.
ArithmeticProgression longest_ap(const std::vector<int>& levels);

// An AP of exactly `length` terms inside the set (smallest b, then smallest a).
std::optional<ArithmeticProgression> find_ap(const std::vector<int>& levels, int length);

// Replica restricted to the levels in sub; DomainError unless sub ⊆ signature.
EmbeddingWitness restrict_replica(const EmbeddingWitness& w, Signature sub);

struct ArithmeticReplica {
    ArithmeticProgression progression;
    EmbeddingWitness witness;
    Signature source;  // signature of S(H) the progression was found in
};

// Scans S(H) by decreasing signature size (ties by mask) for an l-term AP,
// then extracts and restricts. nullopt when no signature holds one.
std::optional<ArithmeticReplica> arithmetic_replica(const TreeSubset& subset, int l,
                                                    const FamilyOptions& options = {});

// The density argument end to end for one H: the guaranteed replica depth
// d = floor(h^{-1}(δ) n), whether the weight threshold certifies it, the
// replica depth actually present, and the AP search.
struct DensityReport {
    double delta = 0;
    double epsilon = 0;
    int guaranteed_depth = 0;
    bool weight_condition = false;     // w(H) >= δ n
    bool threshold_certified = false;  // theorem1_check(n, d, w(H)), d >= 1
    int max_depth = 0;
    std::optional<ArithmeticReplica> replica;
};

DensityReport density_pipeline(const TreeSubset& subset, double delta, int l, const FamilyOptions& options = {});

std::string ap_verdict(const std::optional<ArithmeticReplica>& r);

}  // namespace treeramsey
