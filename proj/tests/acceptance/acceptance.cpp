// Acceptance gate: one [PASS]/[FAIL] line per criterion, exit status 1 if
// any criterion fails. Every check runs at its full pinned size.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "treeramsey/density.hpp"
#include "treeramsey/experiments.hpp"
#include "treeramsey/oracle.hpp"
#include "treeramsey/parallel.hpp"
#include "treeramsey/random_split.hpp"
#include "treeramsey/sary_ext.hpp"
#include "treeramsey/signature_dp.hpp"
#include "treeramsey/stats.hpp"

using namespace treeramsey;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Counts violations over [0, count) in parallel; keeps the lowest failing index.
struct Tally {
    std::atomic<std::uint64_t> checked{0};
    std::atomic<std::uint64_t> violations{0};
    std::mutex mu;
    std::uint64_t first = UINT64_MAX;
    std::string first_note;

    void fail(std::uint64_t index, const std::string& note) {
        ++violations;
        std::lock_guard<std::mutex> lock(mu);
        if (index < first) {
            first = index;
            first_note = note;
        }
    }
    std::string summary() const {
        std::string s = std::to_string(violations.load()) + " violations in " + std::to_string(checked.load());
        if (violations.load() != 0) s += " (first: " + first_note + ")";
        return s;
    }
};

TreeSubset subset_from_bits(int n, std::uint64_t bits) {
    TreeSubset h(n);
    for (VertexId v = 1; v <= vertex_count(n); ++v) {
        if ((bits >> (v - 1)) & 1U) h.insert(v);
    }
    return h;
}

std::string one_line(std::string s) {
    for (char& c : s) {
        if (c == '\n') c = ' ';
    }
    return s;
}

bool signature_bound_holds(const TreeSubset& h) {
    return compare_pow2(set_weight(h), BigInt(signature_set(h).size())) <= 0;
}

Outcome c1_signature_count() {
    const auto t0 = Clock::now();
    Tally all;
    parallel_for(std::size_t{1} << 15, [&](std::size_t bits) {
        ++all.checked;
        if (!signature_bound_holds(subset_from_bits(4, bits))) all.fail(bits, "n=4 bits=" + std::to_string(bits));
    });
    Tally random;
    const Rng base(1001);
    for (int n = 5; n <= 12; ++n) {
        parallel_for(10000, [&](std::size_t t) {
            ++random.checked;
            const TreeSubset h = random_subset(n, 0.5, base.split(static_cast<std::uint64_t>(n)).split(t));
            if (!signature_bound_holds(h)) random.fail(static_cast<std::uint64_t>(n) * 100000 + t, one_line(serialize_subset(h)));
        });
    }
    const double secs = seconds_since(t0);
    const bool pass = all.violations == 0 && random.violations == 0 && all.checked == 32768 &&
                      random.checked == 80000 && secs < 300;
    char time[32];
    std::snprintf(time, sizeof time, "%.1fs", secs);
    return {pass, "exhaustive T_4: " + all.summary() + "; random n=5..12: " + random.summary() + "; " + time};
}

Outcome c2_threshold_soundness() {
    Tally tally;
    std::atomic<std::uint64_t> subsets{0};
    const Rng base(1002);
    for (int n = 1; n <= 12; ++n) {
        parallel_for(1000, [&](std::size_t t) {
            ++subsets;
            Rng r = base.split(static_cast<std::uint64_t>(n)).split(t);
            const double p = r.uniform();
            const TreeSubset h = random_subset(n, p, r.split(0));
            const DyadicWeight w = set_weight(h);
            for (int d = 2; d <= 4; ++d) {
                if (!theorem1_check(n, d, w)) continue;
                ++tally.checked;
                const auto found = contains_replica(h, d);
                if (!found || found->d != d || !validate_embedding(*found, &h).empty()) {
                    tally.fail(static_cast<std::uint64_t>(n) * 100000 + t * 10 + static_cast<std::uint64_t>(d),
                               "n=" + std::to_string(n) + " d=" + std::to_string(d) + " " + one_line(serialize_subset(h)));
                }
            }
        });
    }
    return {tally.violations == 0 && tally.checked > 0,
            std::to_string(subsets.load()) + " subsets, threshold met in " + tally.summary() + " (H, d) pairs"};
}

Outcome c3_oracle_equivalence() {
    Tally exhaustive;
    for (int n = 1; n <= 4; ++n) {
        const std::size_t count = std::size_t{1} << vertex_count(n);
        parallel_for(count, [&](std::size_t bits) {
            ++exhaustive.checked;
            const TreeSubset h = subset_from_bits(n, bits);
            const SignatureFamily dp = signature_set(h);
            const SignatureFamily brute = oracle_signature_set(h);
            if (dp != brute || dp.max_size() != max_replica_depth(h)) {
                exhaustive.fail(static_cast<std::uint64_t>(n) << 40 | bits, one_line(serialize_subset(h)));
            }
        });
    }
    Tally random;
    const Rng base(1003);
    for (int n = 5; n <= 6; ++n) {
        parallel_for(1000, [&](std::size_t t) {
            ++random.checked;
            Rng r = base.split(static_cast<std::uint64_t>(n)).split(t);
            const double p = r.uniform();
            const TreeSubset h = random_subset(n, p, r.split(0));
            if (signature_set(h) != oracle_signature_set(h)) {
                random.fail(static_cast<std::uint64_t>(n) * 100000 + t, one_line(serialize_subset(h)));
            }
        });
    }
    return {exhaustive.violations == 0 && random.violations == 0 && random.checked == 2000,
            "all subsets n<=4: " + exhaustive.summary() + "; random n=5,6: " + random.summary()};
}

Outcome c4_split_has_no_mono_pair() {
    Tally tally;
    const Rng base(1004);
    for (int n = 2; n <= 10; ++n) {
        parallel_for(500, [&](std::size_t t) {
            ++tally.checked;
            const Coloring c = random_split_coloring(n, base.split(static_cast<std::uint64_t>(n)).split(t));
            // Every color class through the signature DP.
            for (const TreeSubset& cls : c.classes()) {
                if (max_replica_depth(cls) >= 2) {
                    tally.fail(static_cast<std::uint64_t>(n) * 1000 + t, "n=" + std::to_string(n) + " trial " + std::to_string(t));
                    break;
                }
            }
        });
    }
    return {tally.violations == 0 && tally.checked == 4500, tally.summary() + " colorings"};
}

Outcome c5_branch_distributions() {
    const Lemma5Report six = compare_lemma5(6, 100000, Rng(1005), first_at_level(5), false);
    const Lemma5Report four = compare_lemma5(4, 100000, Rng(2005), first_at_level(3), true);
    bool pass = true;
    std::ostringstream os;
    os.precision(3);
    os << "n=6 per-position p:";
    for (double p : six.position_p) {
        os << ' ' << p;
        pass = pass && p > 0.001;
    }
    os << "; n=4 per-position p:";
    for (double p : four.position_p) {
        os << ' ' << p;
        pass = pass && p > 0.001;
    }
    os << "; n=4 full-sequence p: " << *four.sequence_p;
    pass = pass && *four.sequence_p > 0.001;
    return {pass, os.str()};
}

Outcome c6_fit_color_count() {
    const Lemma6Stats big = mc_lemma6(16, 10000, Rng(1006));
    const Lemma6Stats small = mc_lemma6(8, 10000, Rng(2006));
    const double frac16 = static_cast<double>(big.exceeded) / 10000.0;
    const double frac8 = static_cast<double>(small.exceeded) / 10000.0;
    const bool martingale = std::fabs(big.mean_final_x) < 3 * big.stderr_final_x;
    std::ostringstream os;
    os << "n=16 k=" << big.k << " exceeded " << big.exceeded << "/10000 (" << frac16 << " <= 0.001); n=8 k="
       << small.k << " exceeded " << small.exceeded << "/10000 (" << frac8 << " <= 0.02); mean final X "
       << big.mean_final_x << ", stderr " << big.stderr_final_x;
    return {big.k == 24 && small.k == 16 && frac16 <= 0.001 && frac8 <= 0.02 && martingale, os.str()};
}

Outcome c7_sufficient_depth_grid() {
    const Theorem2Grid g = theorem2_grid(2, 10, 2, 64);
    int worst_d = 0;
    int worst_k = 0;
    double worst = 0;
    for (const auto& r : g.rows) {
        const double ratio = static_cast<double>(r.n_sufficient) / static_cast<double>(r.bound);
        if (ratio > worst) {
            worst = ratio;
            worst_d = r.d;
            worst_k = r.k;
        }
    }
    std::ostringstream os;
    os << g.violations << " violations in " << g.rows.size() << " cells; largest n/bound " << worst << " at d="
       << worst_d << " k=" << worst_k << (g.monotone ? "; monotone in d and k" : "; NOT monotone");
    return {g.violations == 0 && g.rows.size() == 567, os.str()};
}

Outcome c8_block_construction() {
    const auto base = find_t2free_coloring(8, 16, 64, Rng(1008));
    if (!base) return {false, "no T_2-free 16-coloring of T_8 within 64 attempts"};
    const Coloring lifted = block_coloring(*base, 3);
    const auto mono = find_mono_replica(lifted, 3);
    std::ostringstream os;
    os << "base max color " << base->max_color() << "; lifted depth " << lifted.depth() << ", "
       << lifted.max_color() << " colors; monochromatic T_3: " << (mono ? "FOUND" : "none");
    return {!mono && lifted.depth() == 16 && base->max_color() <= 16, os.str()};
}

Outcome c9_entropy_bound() {
    std::uint64_t checked = 0;
    std::uint64_t violations = 0;
    std::string first;
    for (int n = 1; n <= 200; ++n) {
        for (int j = 1; j <= 9; ++j) {
            const double eps = j / 20.0;
            const ChernoffResult r = chernoff_check(n, eps);
            ++checked;
            // The sum must be the exact big-integer partial sum.
            if (r.sum != binomial_prefix_sum(static_cast<unsigned>(n), static_cast<unsigned>(r.d)) || !r.holds) {
                if (violations++ == 0) first = "n=" + std::to_string(n) + " eps=" + std::to_string(eps);
            }
        }
    }
    return {violations == 0 && checked == 1800,
            std::to_string(violations) + " violations in " + std::to_string(checked) + " (n, eps) pairs" +
                (first.empty() ? "" : " (first: " + first + ")")};
}

Outcome c10_progression_pipeline() {
    const Rng base(1010);
    std::uint64_t ok = 0;
    double slowest = 0;
    std::string first;
    for (std::uint64_t i = 0; i < 100; ++i) {
        TreeSubset h;
        for (std::uint64_t attempt = 0;; ++attempt) {
            h = random_subset(12, 0.9, base.split(i).split(attempt));
            if (set_weight(h).to_double() >= 0.8 * 12) break;
        }
        const auto t0 = Clock::now();
        const auto r = arithmetic_replica(h, 3);
        const double secs = seconds_since(t0);
        slowest = std::max(slowest, secs);
        bool good = r.has_value() && secs < 10.0;
        if (good) {
            const auto levels = r->witness.signature.levels();
            good = r->witness.d == 3 && levels.size() == 3 && levels[2] - levels[1] == levels[1] - levels[0] &&
                   levels[1] > levels[0] && validate_embedding(r->witness, &h).empty();
        }
        if (good) ++ok;
        else if (first.empty()) first = one_line(serialize_subset(h));
    }
    std::ostringstream os;
    os << ok << "/100 validated 3-term arithmetic replicas; slowest instance " << slowest << "s";
    if (!first.empty()) os << " (first failure: " << first << ")";
    return {ok == 100, os.str()};
}

Outcome c11_weighted_chain() {
    const Rational base_ratio(3, 2);
    Tally chain;
    Tally sound;
    const Rng base(1011);
    for (int n = 1; n <= 6; ++n) {
        parallel_for(1000, [&](std::size_t t) {
            ++chain.checked;
            Rng r = base.split(static_cast<std::uint64_t>(n)).split(t);
            const double p = r.uniform();
            const SaryTreeSubset h = random_sary_subset(n, 3, p, r.split(0));
            const SignatureFamily f = sary_signature_set(h);
            const Rational weighted = weighted_signature_count(f, 3);
            const Rational w = sary_weight(h);
            if (!(Rational(BigInt(f.size())) >= weighted && compare_power(base_ratio, w, weighted) <= 0)) {
                chain.fail(static_cast<std::uint64_t>(n) * 10000 + t, one_line(serialize_sary_subset(h)));
            }
            if (n > 5) return;
            for (int d = 1; d <= n; ++d) {
                if (!theorem1prime_check(n, d, 3, w)) continue;
                ++sound.checked;
                if (f.max_size() < d) {
                    sound.fail(static_cast<std::uint64_t>(n) * 10000 + t, "d=" + std::to_string(d) + " " + one_line(serialize_sary_subset(h)));
                }
            }
        });
    }
    return {chain.violations == 0 && sound.violations == 0 && sound.checked > 0,
            "chain: " + chain.summary() + "; threshold met in " + sound.summary() + " (H, d) pairs"};
}

Outcome c12_tree_reduction() {
    const GmapReport r = verify_gmap(8, 3, 1000, Rng(1012));
    std::ostringstream os;
    os << "leaf bound held on " << r.leafbound_ok << "/" << r.trees << " trees; transported witnesses valid "
       << r.transport_ok << "/" << r.transported;
    if (!r.first_leafbound_failure.empty()) {
        const GeneralTree t = parse_tree(r.first_leafbound_failure);
        const GMapResult g = gmap_build(t);
        os << " (first leaf-bound failure: " << t.size() << " vertices, " << t.leaf_count() << " leaves, w(H)="
           << set_weight(g.h).to_string() << ", 3^(w-1)=" << std::pow(3.0, set_weight(g.h).to_double() - 1) << ")";
    }
    return {r.leafbound_ok == r.trees && r.transport_ok == r.transported && r.transported > 0, os.str()};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"C1 |S(H)| >= 2^w(H)", c1_signature_count},
        {"C2 weight threshold gives a replica", c2_threshold_soundness},
        {"C3 DP family equals brute force", c3_oracle_equivalence},
        {"C4 random split has no monochromatic T_2", c4_split_has_no_mono_pair},
        {"C5 random split and random fit agree on a branch", c5_branch_distributions},
        {"C6 random fit color count and martingale", c6_fit_color_count},
        {"C7 least sufficient depth within 5dk log2 k", c7_sufficient_depth_grid},
        {"C8 block coloring is T_3-free", c8_block_construction},
        {"C9 entropy bound on binomial sums", c9_entropy_bound},
        {"C10 arithmetic replicas in dense subsets", c10_progression_pipeline},
        {"C11 weighted signature chain (s = 3)", c11_weighted_chain},
        {"C12 g-map leaf bound and replica transport", c12_tree_reduction},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        char time[32];
        std::snprintf(time, sizeof time, "%.1fs", seconds_since(t0));
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << ": " << o.detail << " [" << time << "]" << std::endl;
        failures += o.pass ? 0 : 1;
    }
    std::cout << (12 - failures) << "/12 criteria passed" << std::endl;
    return failures == 0 ? 0 : 1;
}
