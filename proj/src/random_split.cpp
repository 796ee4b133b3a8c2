#include "treeramsey/random_split.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "treeramsey/errors.hpp"
#include "treeramsey/parallel.hpp"
#include "treeramsey/stats.hpp"

namespace treeramsey {

namespace {

Color least_free(std::uint64_t forbidden) {
    // Bit c set = color c forbidden; bit 0 stands in for "not a color".
    return static_cast<Color>(std::countr_one(forbidden | 1U));
}

std::uint64_t bit(Color c) { return std::uint64_t{1} << c; }

// True with probability 2^{-m}: m fair bits, all zero.
bool accept_pow2(Rng& stream, int m) {
    while (m > 0) {
        const int take = std::min(m, 64);
        const std::uint64_t word = stream();
        if ((take == 64 ? word : word >> (64 - take)) != 0) return false;
        m -= take;
    }
    return true;
}

}  // namespace

// -- Coloring ----------------------------------------------------------------

Coloring::Coloring(int depth, std::vector<Color> colors) : depth_(depth), colors_(std::move(colors)) {
    check_depth(depth);
    if (colors_.size() != vertex_count(depth)) {
        throw ValidationError("coloring of T_" + std::to_string(depth) + " needs " +
                              std::to_string(vertex_count(depth)) + " colors, got " + std::to_string(colors_.size()));
    }
    for (Color c : colors_) {
        if (c < 1) throw ValidationError("colors must be positive integers");
        max_color_ = std::max(max_color_, c);
    }
}

Coloring Coloring::uniform(int depth, Color c) {
    return Coloring(depth, std::vector<Color>(static_cast<std::size_t>(vertex_count(depth)), c));
}

std::vector<TreeSubset> Coloring::classes() const {
    std::vector<TreeSubset> out(max_color_, TreeSubset(depth_));
    for (VertexId v = 1; v <= colors_.size(); ++v) out[(*this)[v] - 1].insert(v);
    return out;
}

// -- Random split ------------------------------------------------------------

std::uint64_t split_coins(const Rng& rng, VertexId v) {
    Rng stream = rng.split(v);
    return stream();
}

RandomSplitResult random_split(int depth, const Rng& rng, const RandomSplitOptions& options) {
    if (depth < 1) throw DomainError("random split needs n >= 1");
    check_depth(depth, std::min(options.depth_cap, kMaxTreeDepth));
    const VertexId count = vertex_count(depth);
    std::vector<std::uint64_t> coins(static_cast<std::size_t>(count) + 1, 0);
    std::vector<Color> color(static_cast<std::size_t>(count) + 1, 0);
    std::vector<std::uint64_t> forbidden;
    if (options.eager) forbidden.assign(static_cast<std::size_t>(count) + 1, 0);

    for (VertexId v = 1; v <= count; ++v) {
        const int level = vertex_level(v);
        std::uint64_t blocked = 0;
        if (options.eager) {
            blocked = forbidden[v];
        } else {
            for (int up = 1; up <= level; ++up) {
                const VertexId x = v >> up;
                const std::uint64_t side = (v >> (up - 1)) & 1U;
                if (((coins[x] >> level) & 1U) == side) blocked |= bit(color[x]);
            }
        }
        const Color c = least_free(blocked);
        color[v] = c;
        coins[v] = split_coins(rng, v);
        if (options.eager) {
            for (int l = level + 1; l < depth; ++l) {
                const VertexId child = 2 * v + ((coins[v] >> l) & 1U);
                const int below = l - level - 1;
                for (VertexId y = child << below, end = (child + 1) << below; y < end; ++y) forbidden[y] |= bit(c);
            }
        }
    }

    RandomSplitResult result;
    result.coloring = Coloring(depth, std::vector<Color>(color.begin() + 1, color.end()));
    if (options.record_coins) result.coins.assign(coins.begin() + 1, coins.end());
    return result;
}

Coloring random_split_coloring(int depth, const Rng& rng) { return random_split(depth, rng).coloring; }

std::string audit_smallest_permitted(const Coloring& coloring, std::span<const std::uint64_t> coins) {
    const int n = coloring.depth();
    if (coins.size() != vertex_count(n)) return "coin record has the wrong length";
    for (VertexId v = 1; v <= vertex_count(n); ++v) {
        const int level = vertex_level(v);
        std::uint64_t blocked = 0;
        for (int a = 0; a < level; ++a) {
            const VertexId x = ancestor_at_level(v, a);
            const VertexId toward = ancestor_at_level(v, a + 1);
            const VertexId chosen = 2 * x + ((coins[x - 1] >> level) & 1U);
            if (chosen == toward) blocked |= bit(coloring[x]);
        }
        const Color c = coloring[v];
        if ((blocked & bit(c)) != 0) return "vertex " + std::to_string(v) + " holds a forbidden color";
        if (least_free(blocked) != c) return "vertex " + std::to_string(v) + " skipped a smaller permitted color";
    }
    return {};
}

std::vector<Color> branch_colors(const Coloring& coloring, VertexId leaf) {
    std::vector<Color> out;
    for (VertexId v : branch(leaf, coloring.depth())) out.push_back(coloring[v]);
    return out;
}

// -- Random fit --------------------------------------------------------------

double FitDecision::probability() const { return std::ldexp(1.0, -prior_uses); }

FitResult random_fit_branch(int n, const Rng& rng) {
    if (n < 1) throw DomainError("random fit needs n >= 1");
    Rng stream = rng;
    FitResult result;
    result.trace.n = n;
    std::vector<int> uses(static_cast<std::size_t>(n) + 2, 0);
    for (int vertex = 0; vertex < n; ++vertex) {
        for (Color c = 1;; ++c) {
            const int m = uses[c];
            const bool accepted = accept_pow2(stream, m);
            result.trace.decisions.push_back({vertex, c, m, accepted});
            if (accepted) {
                result.colors.push_back(c);
                ++uses[c];
                break;
            }
        }
    }
    return result;
}

MartingalePath martingale_trace(const FitTrace& trace) {
    MartingalePath path;
    std::vector<int> uses(static_cast<std::size_t>(trace.n) + 2, 0);
    int vertex = 0;
    Color expected_color = 1;
    double x = 0;
    for (const FitDecision& d : trace.decisions) {
        if (vertex >= trace.n || d.vertex != vertex) throw ValidationError("fit trace: decision out of vertex order");
        if (d.color != expected_color || d.color > static_cast<Color>(trace.n)) {
            throw ValidationError("fit trace: colors must be considered in increasing order");
        }
        if (d.prior_uses != uses[d.color]) throw ValidationError("fit trace: prior use count is inconsistent");
        if (d.prior_uses == 0 && !d.accepted) throw ValidationError("fit trace: a fresh color must be accepted");
        x += d.probability() - (d.accepted ? 1.0 : 0.0);
        path.values.push_back(x);
        if (d.accepted) {
            ++uses[d.color];
            ++path.acceptances;
            ++vertex;
            expected_color = 1;
        } else {
            ++expected_color;
        }
    }
    if (vertex != trace.n || expected_color != 1) throw ValidationError("fit trace: not every vertex was colored");
    path.final_value = x;
    return path;
}

// -- Replicas in colorings -----------------------------------------------------

std::optional<MonoReplica> find_mono_replica(const Coloring& coloring, int d, const FamilyOptions& options) {
    const std::vector<TreeSubset> classes = coloring.classes();
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (classes[i].empty()) continue;
        if (auto w = contains_replica(classes[i], d, options)) return MonoReplica{static_cast<Color>(i + 1), *w};
    }
    return std::nullopt;
}

Coloring block_coloring(const Coloring& base, int d, int depth_cap) {
    if (d < 2) throw DomainError("block coloring needs d >= 2");
    const int band = base.depth();
    if (band < 1) throw DomainError("block coloring needs a nonempty base");
    const long total = static_cast<long>(d - 1) * band;
    if (total > std::min(depth_cap, kMaxTreeDepth)) {
        throw ResourceLimitError("block coloring depth " + std::to_string(total) + " exceeds cap");
    }
    const int n = static_cast<int>(total);
    std::vector<Color> colors(static_cast<std::size_t>(vertex_count(n)));
    for (VertexId v = 1; v <= vertex_count(n); ++v) {
        const int r = vertex_level(v) % band;
        const VertexId local = (VertexId{1} << r) | (v & ((VertexId{1} << r) - 1));
        colors[static_cast<std::size_t>(v - 1)] = base[local];
    }
    return Coloring(n, std::move(colors));
}

std::optional<Coloring> find_t2free_coloring(int n, Color k, int attempts, const Rng& rng) {
    if (attempts < 1) throw DomainError("find_t2free_coloring needs at least one attempt");
    for (int a = 0; a < attempts; ++a) {
        Coloring c = random_split_coloring(n, rng.split(static_cast<std::uint64_t>(a)));
        if (c.max_color() <= k) return c;
    }
    return std::nullopt;
}

// -- random fit Monte Carlo ------------------------------------------------

Color lemma6_color_budget(int n) {
    if (n < 2) throw DomainError("color budget needs n >= 2");
    return static_cast<Color>(2 * static_cast<long>(std::floor(3.0 * n / std::log2(static_cast<double>(n)))));
}

Lemma6Stats mc_lemma6(int n, std::uint64_t trials, const Rng& rng) {
    if (n < 8) throw DomainError("mc_lemma6 requires n >= 8");
    if (trials < 1) throw DomainError("mc_lemma6 requires at least one trial");
    Lemma6Stats stats;
    stats.n = n;
    stats.k = lemma6_color_budget(n);
    stats.trials = trials;
    stats.per_trial.resize(static_cast<std::size_t>(trials));
    parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
        const Rng child = rng.split(t);
        const FitResult fit = random_fit_branch(n, child);
        Lemma6Trial& row = stats.per_trial[t];
        row.seed = child.seed();
        row.max_color = *std::max_element(fit.colors.begin(), fit.colors.end());
        row.exceeded = row.max_color > stats.k;
        row.final_x = martingale_trace(fit.trace).final_value;
    });
    std::vector<double> finals;
    finals.reserve(stats.per_trial.size());
    for (const Lemma6Trial& row : stats.per_trial) {
        ++stats.max_color_histogram[row.max_color];
        stats.exceeded += row.exceeded ? 1 : 0;
        finals.push_back(row.final_x);
    }
    stats.exceed_fraction = static_cast<double>(stats.exceeded) / static_cast<double>(trials);
    stats.exceed_upper95 = binomial_upper_bound(stats.exceeded, trials, 0.95);
    stats.theoretical_bound = std::ldexp(1.0, 1 - n);
    const MeanStats m = mean_and_standard_error(finals);
    stats.mean_final_x = m.mean;
    stats.stderr_final_x = m.standard_error;
    return stats;
}

std::string lemma6_csv(const Lemma6Stats& stats) {
    std::ostringstream os;
    os << "seed,n,k,max_color,exceeded\n";
    Color largest = 0;
    for (const Lemma6Trial& row : stats.per_trial) {
        os << row.seed << ',' << stats.n << ',' << stats.k << ',' << row.max_color << ',' << (row.exceeded ? 1 : 0)
           << '\n';
        largest = std::max(largest, row.max_color);
    }
    os << "summary," << stats.n << ',' << stats.k << ',' << largest << ',' << stats.exceeded << '\n';
    return os.str();
}

// -- Coloring file format ------------------------------------------------------

std::string serialize_coloring(const Coloring& coloring) {
    std::ostringstream os;
    os << "n=" << coloring.depth() << "\n";
    bool first = true;
    for (Color c : coloring.colors()) {
        if (!first) os << ' ';
        os << c;
        first = false;
    }
    os << "\n";
    return os.str();
}

Coloring parse_coloring(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header) || header.rfind("n=", 0) != 0) {
        throw ValidationError("coloring file: expected header line 'n=<depth>'");
    }
    int n = 0;
    try {
        n = std::stoi(header.substr(2));
    } catch (const std::logic_error&) {
        throw ValidationError("coloring file: bad depth");
    }
    check_depth(n);
    std::vector<Color> colors;
    long long value = 0;
    while (in >> value) {
        if (value < 1 || value > 0xFFFFFFFFLL) throw ValidationError("coloring file: colors must be positive");
        colors.push_back(static_cast<Color>(value));
    }
    if (!in.eof()) throw ValidationError("coloring file: non-numeric color entry");
    return Coloring(n, std::move(colors));
}

}  // namespace treeramsey
