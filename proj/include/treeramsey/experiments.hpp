#pragma once

// Experiment harness: random inputs, the sufficient-depth grid, property runs behind
// the verify-* commands, and the config-driven pipeline used by the CLI.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "treeramsey/exact_power.hpp"
#include "treeramsey/rng.hpp"
#include "treeramsey/sary_ext.hpp"
#include "treeramsey/tree_core.hpp"

namespace treeramsey {

// Each vertex independently with probability p.
TreeSubset random_subset(int depth, double p, const Rng& rng);
SaryTreeSubset random_sary_subset(int depth, int arity, double p, const Rng& rng);

// -- sufficient-depth grid -------------------------------------------------

// Least n >= 1 with 2^{n/k} > Σ_{i<d} C(n, i), decided exactly.
int theorem2_least_n(int d, int k);

// ceil(5 d k log2 k), exact.
std::uint64_t theorem2_bound(int d, int k);

struct Theorem2Row {
    int d = 0;
    int k = 0;
    int n_sufficient = 0;
    std::uint64_t bound = 0;
    bool within_bound = false;
    // Largest n' <= cap with a T_2-free k-coloring found by random split, and
    // (d-1) n'. Zero when the construction column was not requested.
    int n_prime = 0;
    int n_construction = 0;
};

struct Theorem2Grid {
    std::vector<Theorem2Row> rows;  // by d, then k
    std::uint64_t violations = 0;   // cells with d, k >= 2 outside the bound
    bool monotone = true;           // n_sufficient nondecreasing in d and in k
};

inline constexpr int kDefaultConstructionCap = 12;

Theorem2Grid theorem2_grid(int d_min, int d_max, int k_min, int k_max, std::optional<Rng> construction = std::nullopt,
                           int construction_cap = kDefaultConstructionCap);

std::string theorem2_csv(const Theorem2Grid& grid);

// -- Property runs ------------------------------------------------------------

struct VerifyReport {
    std::uint64_t checked = 0;
    std::uint64_t passed = 0;
    std::string first_failure;

    bool ok() const { return checked == passed; }
};

// |S(H)| >= 2^{w(H)} over random H (p = 1/2).
VerifyReport verify_lemma3(int n, std::uint64_t trials, const Rng& rng);
// Random H with a random density; every H passing theorem1_check(n, d, w)
// must give a validated depth-d witness. checked counts those H only.
VerifyReport verify_theorem1(int n, int d, std::uint64_t trials, const Rng& rng);
// DP family equals the brute-force family on random H.
VerifyReport verify_oracle(int n, std::uint64_t trials, const Rng& rng);
// No random split coloring has a monochromatic T_2.
VerifyReport verify_lemma4(int n, std::uint64_t trials, const Rng& rng);
// Σ_{i<ceil(εn)} C(n,i) < 2^{h(ε)n} over n = 1..n_max and ε = 0.05..0.45.
VerifyReport verify_chernoff(int n_max);
// |S| >= Σ (s-1)^{-|σ|} >= (s/(s-1))^{w} on random s-ary H.
VerifyReport verify_lemma3prime(int n, int arity, std::uint64_t trials, const Rng& rng);

struct Lemma5Report {
    int n = 0;
    std::uint64_t trials = 0;
    VertexId leaf = 0;
    std::vector<double> position_p;       // chi-square p per branch position
    std::optional<double> sequence_p;     // full color sequence, when requested
    double min_p = 1;
};

// Colors along the branch ending at `leaf` under random split versus random
// fit, each over `trials` runs with independent streams.
Lemma5Report compare_lemma5(int n, std::uint64_t trials, const Rng& rng, VertexId leaf, bool full_sequence);

struct GmapReport {
    std::uint64_t trees = 0;
    std::uint64_t leafbound_ok = 0;
    std::uint64_t transported = 0;
    std::uint64_t transport_ok = 0;
    std::string first_leafbound_failure;  // serialized tree
    std::string first_transport_failure;
};

// Random trees; per tree checks the leaf bound and transports the replica
// found by contains_replica for every depth up to the maximum.
GmapReport verify_gmap(int n, int arity, std::uint64_t trials, const Rng& rng);

// -- Pipeline -----------------------------------------------------------------

enum ExitStatus : int {
    kExitOk = 0,
    kExitFailure = 1,   // validation failure or a verify run with violations
    kExitUsage = 2,
    kExitResource = 3,
};

struct ExperimentConfig {
    std::string command;
    std::optional<int> n, d, k, s, l;
    std::optional<int> d_min, d_max, k_min, k_max;
    std::optional<double> delta, epsilon, p;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<int> attempts;
    std::optional<VertexId> leaf;
    std::string signature;  // "0,2,4"; "" selects ∅
    bool has_signature = false;
    std::string weight;     // rational "p/q" or decimal
    std::string subset_file, coloring_file, tree_file, output;
    bool eager = false;
    bool construction = false;
    int depth_cap = 20;
};

// Runs one command. The artifact goes to config.output (or to out when
// empty); the last line written to out is the verdict. Messages for usage
// and resource errors go to err.
int run_pipeline(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

// Commands run_pipeline understands.
const std::vector<std::string>& pipeline_commands();

// "3/4", "0.75" or "2" as an exact rational.
Rational parse_rational(const std::string& text);

}  // namespace treeramsey
