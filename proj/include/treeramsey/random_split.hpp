#pragma once

// Random split colorings of T_n, the single-branch random fit process, and
// the block construction that lifts T_2-free colorings to T_d-free ones.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "treeramsey/rng.hpp"
#include "treeramsey/signature_dp.hpp"
#include "treeramsey/tree_core.hpp"

namespace treeramsey {

using Color = std::uint32_t;

// Positive colors for every vertex of T_n, heap order.
class Coloring {
public:
    Coloring() = default;
    // colors[v-1] is the color of vertex v; all entries must be >= 1.
    Coloring(int depth, std::vector<Color> colors);
    static Coloring uniform(int depth, Color c);

    int depth() const noexcept { return depth_; }
    Color operator[](VertexId v) const { return colors_.at(static_cast<std::size_t>(v - 1)); }
    std::span<const Color> colors() const noexcept { return colors_; }
    Color max_color() const noexcept { return max_color_; }

    // classes()[c-1] is the color class of c, for c = 1..max_color.
    std::vector<TreeSubset> classes() const;

    friend bool operator==(const Coloring&, const Coloring&) = default;

private:
    int depth_ = 0;
    std::vector<Color> colors_;
    Color max_color_ = 0;
};

struct RandomSplitOptions {
    // Materialize forbidden lists by pushing each color down to the chosen
    // side's descendants, instead of reconstructing them from ancestors.
    bool eager = false;
    bool record_coins = false;
    int depth_cap = kMaxTreeDepth;
};

struct RandomSplitResult {
    Coloring coloring;
    // coins[v-1], bit l: side (0 = left child, 1 = right child) whose level-l
    // descendants have v's color forbidden. Only bits l > level(v) matter.
    std::vector<std::uint64_t> coins;
};

// The per-vertex coin word: first draw of the stream split by vertex id.
std::uint64_t split_coins(const Rng& rng, VertexId v);

RandomSplitResult random_split(int depth, const Rng& rng, const RandomSplitOptions& options = {});
Coloring random_split_coloring(int depth, const Rng& rng);

// Re-derives every forbidden set from recorded coins and checks that each
// vertex holds the least color outside it. Empty string when consistent.
std::string audit_smallest_permitted(const Coloring& coloring, std::span<const std::uint64_t> coins);

// Colors along the root-to-leaf path ending at `leaf`.
std::vector<Color> branch_colors(const Coloring& coloring, VertexId leaf);

struct FitDecision {
    int vertex = 0;       // position on the branch, 0 = root
    Color color = 0;      // color considered
    int prior_uses = 0;   // m: earlier branch vertices holding this color
    bool accepted = false;

    double probability() const;  // 2^{-m}
};

struct FitTrace {
    int n = 0;
    std::vector<FitDecision> decisions;
};

struct FitResult {
    std::vector<Color> colors;
    FitTrace trace;
};

// Colors a branch of n vertices: color c is accepted with probability 2^{-m}.
FitResult random_fit_branch(int n, const Rng& rng);

struct MartingalePath {
    std::vector<double> values;  // X_1..X_J, J = number of decisions
    double final_value = 0;
    int acceptances = 0;
};

// X_0 = 0, X_j = X_{j-1} + p_j - [decision j accepted]. ValidationError when
// the trace is not one random fit run could produce.
MartingalePath martingale_trace(const FitTrace& trace);

struct MonoReplica {
    Color color = 0;
    EmbeddingWitness witness;
};

// First color class (smallest color) containing a replica of T_d.
std::optional<MonoReplica> find_mono_replica(const Coloring& coloring, int d, const FamilyOptions& options = {});

// Tiles T_{(d-1)n'} with copies of base on bands of n' levels.
Coloring block_coloring(const Coloring& base, int d, int depth_cap = kMaxTreeDepth);

inline constexpr int kDefaultT2FreeAttempts = 64;

// First random split coloring (attempt a uses rng.split(a)) with at most k colors.
std::optional<Coloring> find_t2free_coloring(int n, Color k, int attempts, const Rng& rng);

// k = 2 floor(3n / log2 n).
Color lemma6_color_budget(int n);

struct Lemma6Trial {
    std::uint64_t seed = 0;
    Color max_color = 0;
    bool exceeded = false;
    double final_x = 0;
};

struct Lemma6Stats {
    int n = 0;
    Color k = 0;
    std::uint64_t trials = 0;
    std::uint64_t exceeded = 0;
    std::map<Color, std::uint64_t> max_color_histogram;
    double exceed_fraction = 0;
    double exceed_upper95 = 0;   // one-sided Clopper-Pearson
    double theoretical_bound = 0;  // 2^{1-n}
    double mean_final_x = 0;
    double stderr_final_x = 0;
    std::vector<Lemma6Trial> per_trial;
};

Lemma6Stats mc_lemma6(int n, std::uint64_t trials, const Rng& rng);

// "seed,n,k,max_color,exceeded" rows then "summary,n,k,<largest max_color>,<exceeded count>".
std::string lemma6_csv(const Lemma6Stats& stats);

// Coloring file: "n=<depth>" then space-separated colors in heap order.
std::string serialize_coloring(const Coloring& coloring);
Coloring parse_coloring(const std::string& text);

}  // namespace treeramsey
