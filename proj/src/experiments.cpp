#include "treeramsey/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "treeramsey/density.hpp"
#include "treeramsey/errors.hpp"
#include "treeramsey/oracle.hpp"
#include "treeramsey/parallel.hpp"
#include "treeramsey/random_split.hpp"
#include "treeramsey/signature_dp.hpp"
#include "treeramsey/stats.hpp"

namespace treeramsey {

TreeSubset random_subset(int depth, double p, const Rng& rng) {
    check_depth(depth);
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("density must lie in [0, 1]");
    Rng stream = rng;
    TreeSubset h(depth);
    for (VertexId v = 1; v <= h.vertex_count(); ++v) {
        if (stream.uniform() < p) h.insert(v);
    }
    return h;
}

SaryTreeSubset random_sary_subset(int depth, int arity, double p, const Rng& rng) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("density must lie in [0, 1]");
    Rng stream = rng;
    SaryTreeSubset h(depth, arity);
    for (std::uint64_t v = 0; v < h.vertex_count(); ++v) {
        if (stream.uniform() < p) h.insert(v);
    }
    return h;
}

// -- sufficient-depth grid -------------------------------------------------

int theorem2_least_n(int d, int k) {
    if (d < 1 || k < 1) throw DomainError("theorem2 needs d, k >= 1");
    constexpr int kScanLimit = 1 << 22;
    for (int n = 1; n < kScanLimit; ++n) {
        double term = 1;
        double sum = 1;
        for (int i = 1; i < d && i <= n; ++i) {
            term = term * (n - i + 1) / i;
            sum += term;
        }
        const double margin = static_cast<double>(n) / k - std::log2(sum);
        if (margin < -1e-6) continue;
        if (margin > 1e-6) return n;
        const BigInt rhs = binomial_prefix_sum(static_cast<unsigned>(n), static_cast<unsigned>(d));
        if (compare_power(Rational(2), Rational(BigInt(n), BigInt(k)), Rational(rhs)) > 0) return n;
    }
    throw ResourceLimitError("theorem2 scan passed n = 2^22");
}

std::uint64_t theorem2_bound(int d, int k) {
    if (d < 1 || k < 1) throw DomainError("theorem2 needs d, k >= 1");
    if (k == 1) return 0;
    // Least N with 2^N >= k^{5dk}.
    const unsigned e = static_cast<unsigned>(5 * d * k);
    const BigInt target = boost::multiprecision::pow(BigInt(k), e);
    auto pow2 = [](std::uint64_t x) { return BigInt(1) << static_cast<unsigned>(x); };
    auto c = static_cast<std::uint64_t>(std::ceil(5.0 * d * k * std::log2(static_cast<double>(k))));
    while (c > 0 && pow2(c - 1) >= target) --c;
    while (pow2(c) < target) ++c;
    return c;
}

Theorem2Grid theorem2_grid(int d_min, int d_max, int k_min, int k_max, std::optional<Rng> construction,
                           int construction_cap) {
    if (d_min < 1 || k_min < 1 || d_min > d_max || k_min > k_max) throw DomainError("empty or invalid grid range");
    if (d_max > 10 || k_max > 64) throw DomainError("grid is limited to d <= 10 and k <= 64");
    Theorem2Grid grid;
    const int dn = d_max - d_min + 1;
    const int kn = k_max - k_min + 1;
    grid.rows.resize(static_cast<std::size_t>(dn * kn));
    parallel_for(grid.rows.size(), [&](std::size_t i) {
        Theorem2Row& r = grid.rows[i];
        r.d = d_min + static_cast<int>(i) / kn;
        r.k = k_min + static_cast<int>(i) % kn;
        r.n_sufficient = theorem2_least_n(r.d, r.k);
        r.bound = theorem2_bound(r.d, r.k);
        r.within_bound = static_cast<std::uint64_t>(r.n_sufficient) <= r.bound;
    }, 1);

    if (construction) {
        std::vector<int> n_prime(static_cast<std::size_t>(kn), 0);
        parallel_for(n_prime.size(), [&](std::size_t i) {
            const int k = k_min + static_cast<int>(i);
            const Rng base = construction->split(static_cast<std::uint64_t>(k));
            int best = 0;
            for (int m = 1; m <= construction_cap; ++m) {
                if (!find_t2free_coloring(m, static_cast<Color>(k), kDefaultT2FreeAttempts,
                                          base.split(static_cast<std::uint64_t>(m)))) {
                    break;
                }
                best = m;
            }
            n_prime[i] = best;
        }, 1);
        for (auto& r : grid.rows) {
            r.n_prime = n_prime[static_cast<std::size_t>(r.k - k_min)];
            r.n_construction = (r.d - 1) * r.n_prime;
        }
    }

    for (std::size_t i = 0; i < grid.rows.size(); ++i) {
        const Theorem2Row& r = grid.rows[i];
        if (r.d >= 2 && r.k >= 2 && !r.within_bound) ++grid.violations;
        if (r.k > k_min && grid.rows[i - 1].n_sufficient > r.n_sufficient) grid.monotone = false;
        if (r.d > d_min && grid.rows[i - static_cast<std::size_t>(kn)].n_sufficient > r.n_sufficient) grid.monotone = false;
    }
    return grid;
}

std::string theorem2_csv(const Theorem2Grid& grid) {
    std::ostringstream os;
    os << "d,k,n_sufficient,bound,within_bound,n_prime,n_construction\n";
    for (const auto& r : grid.rows) {
        os << r.d << ',' << r.k << ',' << r.n_sufficient << ',' << r.bound << ',' << (r.within_bound ? 1 : 0) << ','
           << r.n_prime << ',' << r.n_construction << '\n';
    }
    return os.str();
}

// -- Property runs ------------------------------------------------------------

namespace {

// Runs check(t) for every trial in parallel and folds the outcomes in trial
// order, so the first failure reported does not depend on the schedule.
template <class Check>
VerifyReport run_trials(std::uint64_t trials, Check&& check) {
    struct Outcome {
        bool counted = false;
        bool passed = false;
        std::string failure;
    };
    std::vector<Outcome> outcomes(static_cast<std::size_t>(trials));
    parallel_for(outcomes.size(), [&](std::size_t t) {
        Outcome& o = outcomes[t];
        o.counted = check(static_cast<std::uint64_t>(t), o.passed, o.failure);
    });
    VerifyReport r;
    for (const auto& o : outcomes) {
        if (!o.counted) continue;
        ++r.checked;
        if (o.passed) ++r.passed;
        else if (r.first_failure.empty()) r.first_failure = o.failure;
    }
    return r;
}

}  // namespace

VerifyReport verify_lemma3(int n, std::uint64_t trials, const Rng& rng) {
    return run_trials(trials, [&](std::uint64_t t, bool& passed, std::string& failure) {
        const TreeSubset h = random_subset(n, 0.5, rng.split(t));
        const SignatureFamily s = signature_set(h);
        passed = compare_pow2(set_weight(h), BigInt(s.size())) <= 0;
        if (!passed) failure = serialize_subset(h);
        return true;
    });
}

VerifyReport verify_theorem1(int n, int d, std::uint64_t trials, const Rng& rng) {
    return run_trials(trials, [&](std::uint64_t t, bool& passed, std::string& failure) {
        Rng stream = rng.split(t);
        const double p = stream.uniform();
        const TreeSubset h = random_subset(n, p, stream.split(0));
        if (!theorem1_check(n, d, set_weight(h))) return false;
        const auto w = contains_replica(h, d);
        passed = w && w->d == d && validate_embedding(*w, &h).empty();
        if (!passed) failure = serialize_subset(h);
        return true;
    });
}

VerifyReport verify_oracle(int n, std::uint64_t trials, const Rng& rng) {
    return run_trials(trials, [&](std::uint64_t t, bool& passed, std::string& failure) {
        Rng stream = rng.split(t);
        const double p = stream.uniform();
        const TreeSubset h = random_subset(n, p, stream.split(0));
        passed = oracle_signature_set(h) == signature_set(h);
        if (!passed) failure = serialize_subset(h);
        return true;
    });
}

VerifyReport verify_lemma4(int n, std::uint64_t trials, const Rng& rng) {
    return run_trials(trials, [&](std::uint64_t t, bool& passed, std::string& failure) {
        const Coloring c = random_split_coloring(n, rng.split(t));
        passed = !find_mono_replica(c, 2).has_value();
        if (!passed) failure = serialize_coloring(c);
        return true;
    });
}

VerifyReport verify_chernoff(int n_max) {
    VerifyReport r;
    for (int n = 1; n <= n_max; ++n) {
        for (int j = 1; j <= 9; ++j) {
            const double eps = j / 20.0;
            ++r.checked;
            if (chernoff_check(n, eps).holds) {
                ++r.passed;
            } else if (r.first_failure.empty()) {
                r.first_failure = "n=" + std::to_string(n) + " epsilon=" + std::to_string(eps);
            }
        }
    }
    return r;
}

VerifyReport verify_lemma3prime(int n, int arity, std::uint64_t trials, const Rng& rng) {
    const Rational base(BigInt(arity), BigInt(arity - 1));
    return run_trials(trials, [&](std::uint64_t t, bool& passed, std::string& failure) {
        Rng stream = rng.split(t);
        const double p = stream.uniform();
        const SaryTreeSubset h = random_sary_subset(n, arity, p, stream.split(0));
        const SignatureFamily s = sary_signature_set(h);
        const Rational weighted = weighted_signature_count(s, arity);
        passed = Rational(BigInt(s.size())) >= weighted && compare_power(base, sary_weight(h), weighted) <= 0;
        if (!passed) failure = serialize_sary_subset(h);
        return true;
    });
}

Lemma5Report compare_lemma5(int n, std::uint64_t trials, const Rng& rng, VertexId leaf, bool full_sequence) {
    if (n < 1) throw DomainError("lemma5 needs n >= 1");
    if (trials < 1) throw DomainError("lemma5 needs trials >= 1");
    const std::vector<VertexId> path = branch(leaf, n);
    const auto len = static_cast<std::size_t>(n);
    std::vector<Color> split_colors(static_cast<std::size_t>(trials) * len);
    std::vector<Color> fit_colors(static_cast<std::size_t>(trials) * len);
    const Rng split_base = rng.split(0);
    const Rng fit_base = rng.split(1);
    parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
        const Coloring c = random_split_coloring(n, split_base.split(t));
        const FitResult f = random_fit_branch(n, fit_base.split(t));
        for (std::size_t i = 0; i < len; ++i) {
            split_colors[t * len + i] = c[path[i]];
            fit_colors[t * len + i] = f.colors[i];
        }
    });

    Lemma5Report r;
    r.n = n;
    r.trials = trials;
    r.leaf = leaf;
    for (std::size_t i = 0; i < len; ++i) {
        std::map<Color, std::uint64_t> a;
        std::map<Color, std::uint64_t> b;
        for (std::size_t t = 0; t < trials; ++t) {
            ++a[split_colors[t * len + i]];
            ++b[fit_colors[t * len + i]];
        }
        r.position_p.push_back(chi_square_homogeneity(a, b).p_value);
    }
    if (full_sequence) {
        std::map<std::vector<Color>, std::uint64_t> a;
        std::map<std::vector<Color>, std::uint64_t> b;
        for (std::size_t t = 0; t < trials; ++t) {
            const auto at = split_colors.begin() + static_cast<std::ptrdiff_t>(t * len);
            const auto bt = fit_colors.begin() + static_cast<std::ptrdiff_t>(t * len);
            ++a[std::vector<Color>(at, at + static_cast<std::ptrdiff_t>(len))];
            ++b[std::vector<Color>(bt, bt + static_cast<std::ptrdiff_t>(len))];
        }
        r.sequence_p = chi_square_homogeneity(a, b).p_value;
    }
    r.min_p = 1;
    for (double p : r.position_p) r.min_p = std::min(r.min_p, p);
    if (r.sequence_p) r.min_p = std::min(r.min_p, *r.sequence_p);
    return r;
}

GmapReport verify_gmap(int n, int arity, std::uint64_t trials, const Rng& rng) {
    struct Outcome {
        bool leafbound = false;
        std::uint64_t transported = 0;
        std::uint64_t transport_ok = 0;
        std::string tree;
    };
    std::vector<Outcome> outcomes(static_cast<std::size_t>(trials));
    parallel_for(outcomes.size(), [&](std::size_t t) {
        Outcome& o = outcomes[t];
        const GeneralTree tree = random_general_tree(arity, n, rng.split(t));
        const GMapResult g = gmap_build(tree);
        o.leafbound = leafbound_check(tree, g, arity);
        const int top = max_replica_depth(g.h);
        for (int d = 1; d <= top; ++d) {
            const auto w = contains_replica(g.h, d);
            ++o.transported;
            if (w && validate_tree_embedding(tree, d, transport_witness(*w, g)).empty()) ++o.transport_ok;
        }
        if (!o.leafbound || o.transport_ok != o.transported) o.tree = serialize_tree(tree);
    });
    GmapReport r;
    r.trees = trials;
    for (const auto& o : outcomes) {
        if (o.leafbound) ++r.leafbound_ok;
        else if (r.first_leafbound_failure.empty()) r.first_leafbound_failure = o.tree;
        r.transported += o.transported;
        r.transport_ok += o.transport_ok;
        if (o.transport_ok != o.transported && r.first_transport_failure.empty()) r.first_transport_failure = o.tree;
    }
    return r;
}

// -- Pipeline -----------------------------------------------------------------

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw DomainError("empty number");
    const auto slash = text.find('/');
    auto integer = [&](const std::string& s) {
        if (s.empty() || s.find_first_not_of("0123456789-") != std::string::npos) {
            throw DomainError("bad number '" + text + "'");
        }
        return BigInt(s);
    };
    if (slash != std::string::npos) {
        const BigInt den = integer(text.substr(slash + 1));
        if (den == 0) throw DomainError("zero denominator in '" + text + "'");
        return Rational(integer(text.substr(0, slash)), den);
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(integer(text));
    const std::string frac = text.substr(dot + 1);
    if (frac.find_first_not_of("0123456789") != std::string::npos) throw DomainError("bad number '" + text + "'");
    const std::string whole = text.substr(0, dot);
    const bool negative = !whole.empty() && whole[0] == '-';
    BigInt num = integer(whole.empty() || whole == "-" ? whole + "0" : whole);
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt f = frac.empty() ? BigInt(0) : BigInt(frac);
    if (negative) f = -f;
    return Rational(num * scale + f, scale);
}

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string rational_string(const Rational& r) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(r);
    if (boost::multiprecision::denominator(r) != 1) os << '/' << boost::multiprecision::denominator(r);
    return os.str();
}

DyadicWeight to_dyadic(const Rational& r) {
    if (r < 0) throw DomainError("weight must be non-negative");
    const BigInt den = boost::multiprecision::denominator(r);
    if ((den & (den - 1)) != 0) throw DomainError("weight must be dyadic (denominator a power of two)");
    const unsigned e = static_cast<unsigned>(boost::multiprecision::msb(den));
    const BigInt num = boost::multiprecision::numerator(r);
    if (num > std::numeric_limits<std::uint64_t>::max()) throw ResourceLimitError("weight numerator too large");
    return DyadicWeight(num.convert_to<std::uint64_t>(), e);
}

std::string family_listing(const SignatureFamily& f) {
    std::string out;
    for (Signature s : f.members()) out += "{" + s.to_string() + "}\n";
    return out;
}

class Pipeline {
public:
    Pipeline(const ExperimentConfig& c, std::ostream& out) : c_(c), out_(out) { options_.depth_cap = c.depth_cap; }

    int run();

private:
    template <class T>
    T need(const std::optional<T>& v, const char* flag) const {
        if (!v) throw UsageError(c_.command + " needs --" + std::string(flag));
        return *v;
    }
    const std::string& need_file(const std::string& path, const char* flag) const {
        if (path.empty()) throw UsageError(c_.command + " needs --" + std::string(flag));
        return path;
    }
    Rng seed() const { return Rng(need(c_.seed, "seed")); }
    std::uint64_t trials() const {
        const std::uint64_t t = need(c_.trials, "trials");
        if (t == 0) throw UsageError("--trials must be at least 1");
        return t;
    }
    TreeSubset subset() const { return parse_subset(read_text(need_file(c_.subset_file, "subset-file"))); }
    Coloring coloring() const { return parse_coloring(read_text(need_file(c_.coloring_file, "coloring-file"))); }

    void artifact(const std::string& text) {
        if (c_.output.empty()) {
            out_ << text;
            return;
        }
        std::ofstream f(c_.output, std::ios::binary | std::ios::trunc);
        if (!f) throw ValidationError("cannot write '" + c_.output + "'");
        f << text;
    }
    int verdict(const std::string& line, int status = kExitOk) {
        out_ << line << '\n';
        return status;
    }
    int verify_verdict(const char* name, const VerifyReport& r) {
        std::string line = std::string(name) + (r.ok() ? " OK " : " FAIL ") + std::to_string(r.passed) + "/" +
                           std::to_string(r.checked);
        if (!r.ok()) artifact(r.first_failure);
        return verdict(line, r.ok() ? kExitOk : kExitFailure);
    }

    const ExperimentConfig& c_;
    std::ostream& out_;
    FamilyOptions options_;
};

int Pipeline::run() {
    const std::string& cmd = c_.command;
    if (cmd == "weight") {
        return verdict("WEIGHT " + set_weight(subset()).to_string());
    }
    if (cmd == "signatures") {
        const SignatureFamily f = signature_set(subset(), options_);
        artifact(family_listing(f));
        return verdict("SIGNATURES count=" + std::to_string(f.size()) + " max_depth=" + std::to_string(f.max_size()));
    }
    if (cmd == "max-depth") {
        return verdict("MAX_DEPTH " + std::to_string(max_replica_depth(subset(), options_)));
    }
    if (cmd == "extract") {
        const TreeSubset h = subset();
        std::optional<EmbeddingWitness> w;
        if (c_.has_signature) {
            std::vector<int> levels;
            std::istringstream in(c_.signature);
            std::string part;
            while (std::getline(in, part, ',')) {
                if (part.empty()) continue;
                try {
                    levels.push_back(std::stoi(part));
                } catch (const std::logic_error&) {
                    throw UsageError("bad --signature '" + c_.signature + "'");
                }
            }
            for (int l : levels) {
                if (l < 0 || l >= h.depth()) throw UsageError("--signature level outside T_n");
            }
            try {
                w = extract_replica(h, Signature::from_levels(levels), options_);
            } catch (const NoWitnessError&) {
                w.reset();
            }
        } else {
            w = contains_replica(h, need(c_.d, "d (or --signature)"), options_);
        }
        if (!w) return verdict("NONE");
        artifact(serialize_witness(*w));
        return verdict("WITNESS d=" + std::to_string(w->d) + " signature=" + w->signature.to_string());
    }
    if (cmd == "theorem1") {
        const bool ok = theorem1_check(need(c_.n, "n"), need(c_.d, "d"), to_dyadic(parse_rational(c_.weight)));
        return verdict(std::string("THEOREM1 ") + (ok ? "TRUE" : "FALSE"));
    }
    if (cmd == "random-split") {
        RandomSplitOptions o;
        o.eager = c_.eager;
        o.record_coins = true;
        const RandomSplitResult r = random_split(need(c_.n, "n"), seed(), o);
        const std::string audit = audit_smallest_permitted(r.coloring, r.coins);
        artifact(serialize_coloring(r.coloring));
        if (!audit.empty()) return verdict("AUDIT FAIL " + audit, kExitFailure);
        return verdict("COLORING n=" + std::to_string(r.coloring.depth()) +
                       " max_color=" + std::to_string(r.coloring.max_color()));
    }
    if (cmd == "random-fit") {
        const FitResult f = random_fit_branch(need(c_.n, "n"), seed());
        const MartingalePath m = martingale_trace(f.trace);
        std::ostringstream csv;
        csv << "step,vertex,color,prior_uses,accepted,x\n";
        for (std::size_t j = 0; j < f.trace.decisions.size(); ++j) {
            const FitDecision& dec = f.trace.decisions[j];
            csv << j + 1 << ',' << dec.vertex << ',' << dec.color << ',' << dec.prior_uses << ','
                << (dec.accepted ? 1 : 0) << ',' << fmt(m.values[j]) << '\n';
        }
        artifact(csv.str());
        const Color top = *std::max_element(f.colors.begin(), f.colors.end());
        return verdict("FIT n=" + std::to_string(f.trace.n) + " max_color=" + std::to_string(top) +
                       " acceptances=" + std::to_string(m.acceptances) + " final_x=" + fmt(m.final_value));
    }
    if (cmd == "mono-replica") {
        const auto r = find_mono_replica(coloring(), need(c_.d, "d"), options_);
        if (!r) return verdict("NONE");
        artifact(serialize_witness(r->witness));
        return verdict("MONO_REPLICA color=" + std::to_string(r->color) + " d=" + std::to_string(r->witness.d));
    }
    if (cmd == "t2free") {
        const int k = need(c_.k, "k");
        if (k < 1) throw UsageError("--k must be positive");
        const auto r = find_t2free_coloring(need(c_.n, "n"), static_cast<Color>(k),
                                            c_.attempts.value_or(kDefaultT2FreeAttempts), seed());
        if (!r) return verdict("NONE");
        artifact(serialize_coloring(*r));
        return verdict("T2FREE n=" + std::to_string(r->depth()) + " k=" + std::to_string(k) +
                       " max_color=" + std::to_string(r->max_color()));
    }
    if (cmd == "block-color") {
        const Coloring b = block_coloring(coloring(), need(c_.d, "d"));
        artifact(serialize_coloring(b));
        return verdict("BLOCK_COLORING n=" + std::to_string(b.depth()) + " max_color=" + std::to_string(b.max_color()));
    }
    if (cmd == "mc-lemma6") {
        const Lemma6Stats s = mc_lemma6(need(c_.n, "n"), trials(), seed());
        artifact(lemma6_csv(s));
        return verdict("LEMMA6 n=" + std::to_string(s.n) + " k=" + std::to_string(s.k) + " exceeded=" +
                       std::to_string(s.exceeded) + "/" + std::to_string(s.trials) + " upper95=" +
                       fmt(s.exceed_upper95) + " mean_x=" + fmt(s.mean_final_x) + " stderr_x=" + fmt(s.stderr_final_x));
    }
    if (cmd == "entropy") {
        if (c_.epsilon) return verdict("ENTROPY h=" + fmt(binary_entropy(*c_.epsilon)));
        return verdict("INV_ENTROPY epsilon=" + fmt(inv_entropy(need(c_.delta, "epsilon (or --delta)"))));
    }
    if (cmd == "chernoff") {
        const ChernoffResult r = chernoff_check(need(c_.n, "n"), need(c_.epsilon, "epsilon"));
        std::ostringstream os;
        os << "CHERNOFF " << (r.holds ? "HOLDS" : "FAILS") << " d=" << r.d << " sum=" << r.sum
           << " log2_sum=" << fmt(log2_big(r.sum)) << " bound_log2=" << fmt(r.bound_log2);
        return verdict(os.str());
    }
    if (cmd == "arith-replica") {
        const TreeSubset h = subset();
        const int l = need(c_.l, "l");
        if (l < 1) throw UsageError("--l must be positive");
        if (c_.delta) {
            const DensityReport d = density_pipeline(h, *c_.delta, l, options_);
            out_ << "DENSITY delta=" << fmt(d.delta) << " epsilon=" << fmt(d.epsilon)
                 << " guaranteed_depth=" << d.guaranteed_depth << " weight_condition=" << (d.weight_condition ? 1 : 0)
                 << " certified=" << (d.threshold_certified ? 1 : 0) << " max_depth=" << d.max_depth << '\n';
        }
        const auto r = arithmetic_replica(h, l, options_);
        if (r) artifact(serialize_witness(r->witness));
        return verdict(ap_verdict(r));
    }
    if (cmd == "sary-weight") {
        const SaryTreeSubset h = parse_sary_subset(read_text(need_file(c_.subset_file, "subset-file")));
        return verdict("SARY_WEIGHT " + rational_string(sary_weight(h)));
    }
    if (cmd == "sary-signatures") {
        const SaryTreeSubset h = parse_sary_subset(read_text(need_file(c_.subset_file, "subset-file")));
        const SignatureFamily f = sary_signature_set(h, options_);
        artifact(family_listing(f));
        return verdict("SARY_SIGNATURES count=" + std::to_string(f.size()) + " weighted=" +
                       rational_string(weighted_signature_count(f, h.arity())) + " max_depth=" +
                       std::to_string(f.max_size()));
    }
    if (cmd == "sary-check") {
        const int s = need(c_.s, "s");
        if (s < 2) throw UsageError("--s must be at least 2");
        const bool ok = theorem1prime_check(need(c_.n, "n"), need(c_.d, "d"), s, parse_rational(c_.weight));
        return verdict(std::string("THEOREM1PRIME ") + (ok ? "TRUE" : "FALSE"));
    }
    if (cmd == "gmap") {
        const GeneralTree tree = parse_tree(read_text(need_file(c_.tree_file, "tree-file")));
        const GMapResult g = gmap_build(tree);
        std::ostringstream os;
        for (VertexId v = 1; v < g.image.size(); ++v) os << v << " -> " << g.image[v] << '\n';
        os << serialize_subset(g.h);
        artifact(os.str());
        const bool bound = leafbound_check(tree, g, tree.arity());
        return verdict("GMAP n=" + std::to_string(g.n) + " weight=" + set_weight(g.h).to_string() +
                       " leaves=" + std::to_string(tree.leaf_count()) + " LEAFBOUND " + (bound ? "HOLDS" : "FAILS"));
    }
    if (cmd == "theorem2-grid") {
        std::optional<Rng> construction;
        if (c_.construction) construction = seed();
        const Theorem2Grid g = theorem2_grid(c_.d_min.value_or(2), c_.d_max.value_or(10), c_.k_min.value_or(2),
                                             c_.k_max.value_or(64), construction);
        artifact(theorem2_csv(g));
        const bool ok = g.violations == 0 && g.monotone;
        return verdict(std::string("THEOREM2 ") + (ok ? "OK " : "FAIL ") +
                           std::to_string(g.rows.size() - g.violations) + "/" + std::to_string(g.rows.size()) +
                           (g.monotone ? " MONOTONE" : " NOT_MONOTONE"),
                       ok ? kExitOk : kExitFailure);
    }
    if (cmd == "oracle") {
        const TreeSubset h = subset();
        const int d = need(c_.d, "d");
        const OracleResult r = oracle_enumerate(h, d);
        std::string text;
        for (const auto& w : r.witnesses) text += serialize_witness(w) + "\n";
        artifact(text);
        const SignatureFamily dp = signature_set(h, options_);
        bool match = true;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << h.depth()); ++mask) {
            const Signature s{mask};
            if (s.size() == d && dp.contains(s) != r.signatures.contains(s)) match = false;
        }
        return verdict("ORACLE embeddings=" + std::to_string(r.witnesses.size()) + " signatures=" +
                           std::to_string(r.signatures.size() - (d == 0 ? 0 : 1)) + (match ? " MATCH" : " MISMATCH"),
                       match ? kExitOk : kExitFailure);
    }
    if (cmd == "verify-lemma3") return verify_verdict("LEMMA3", verify_lemma3(need(c_.n, "n"), trials(), seed()));
    if (cmd == "verify-theorem1") {
        return verify_verdict("THEOREM1", verify_theorem1(need(c_.n, "n"), need(c_.d, "d"), trials(), seed()));
    }
    if (cmd == "verify-oracle") return verify_verdict("ORACLE", verify_oracle(need(c_.n, "n"), trials(), seed()));
    if (cmd == "verify-lemma4") return verify_verdict("LEMMA4", verify_lemma4(need(c_.n, "n"), trials(), seed()));
    if (cmd == "verify-chernoff") return verify_verdict("CHERNOFF", verify_chernoff(c_.n.value_or(200)));
    if (cmd == "verify-lemma3prime") {
        const int s = need(c_.s, "s");
        if (s < 2) throw UsageError("--s must be at least 2");
        return verify_verdict("LEMMA3PRIME", verify_lemma3prime(need(c_.n, "n"), s, trials(), seed()));
    }
    if (cmd == "verify-lemma5") {
        const int n = need(c_.n, "n");
        if (n < 1 || n > kMaxTreeDepth) throw UsageError("--n out of range");
        const VertexId leaf = c_.leaf.value_or(first_at_level(n - 1));
        const Lemma5Report r = compare_lemma5(n, trials(), seed(), leaf, n <= 4);
        std::ostringstream csv;
        csv << "position,vertex,p_value\n";
        const auto path = branch(leaf, n);
        for (std::size_t i = 0; i < r.position_p.size(); ++i) {
            csv << i << ',' << path[i] << ',' << fmt(r.position_p[i]) << '\n';
        }
        if (r.sequence_p) csv << "sequence,," << fmt(*r.sequence_p) << '\n';
        artifact(csv.str());
        const bool ok = r.min_p > 0.001;
        return verdict(std::string("LEMMA5 ") + (ok ? "OK" : "FAIL") + " min_p=" + fmt(r.min_p),
                       ok ? kExitOk : kExitFailure);
    }
    if (cmd == "verify-gmap") {
        const int s = need(c_.s, "s");
        const GmapReport r = verify_gmap(need(c_.n, "n"), s, trials(), seed());
        const bool ok = r.leafbound_ok == r.trees && r.transport_ok == r.transported;
        if (!ok) artifact(!r.first_leafbound_failure.empty() ? r.first_leafbound_failure : r.first_transport_failure);
        return verdict(std::string("GMAP ") + (ok ? "OK" : "FAIL") + " leafbound=" + std::to_string(r.leafbound_ok) +
                           "/" + std::to_string(r.trees) + " transport=" + std::to_string(r.transport_ok) + "/" +
                           std::to_string(r.transported),
                       ok ? kExitOk : kExitFailure);
    }
    if (cmd == "gen-subset") {
        const TreeSubset h = random_subset(need(c_.n, "n"), c_.p.value_or(0.5), seed());
        artifact(serialize_subset(h));
        return verdict("SUBSET n=" + std::to_string(h.depth()) + " weight=" + set_weight(h).to_string());
    }
    if (cmd == "gen-sary-subset") {
        const SaryTreeSubset h = random_sary_subset(need(c_.n, "n"), need(c_.s, "s"), c_.p.value_or(0.5), seed());
        artifact(serialize_sary_subset(h));
        return verdict("SARY_SUBSET n=" + std::to_string(h.depth()) + " s=" + std::to_string(h.arity()) +
                       " weight=" + rational_string(sary_weight(h)));
    }
    if (cmd == "gen-tree") {
        const GeneralTree t = random_general_tree(need(c_.s, "s"), need(c_.n, "n"), seed());
        artifact(serialize_tree(t));
        return verdict("TREE s=" + std::to_string(t.arity()) + " n=" + std::to_string(t.depth()) +
                       " vertices=" + std::to_string(t.size()) + " leaves=" + std::to_string(t.leaf_count()));
    }
    throw UsageError("unknown command '" + cmd + "'");
}

}  // namespace

const std::vector<std::string>& pipeline_commands() {
    static const std::vector<std::string> commands{
        "weight",          "signatures",     "max-depth",       "extract",        "theorem1",
        "random-split",    "random-fit",     "mono-replica",    "t2free",         "block-color",
        "mc-lemma6",       "entropy",        "chernoff",        "arith-replica",  "sary-weight",
        "sary-signatures", "sary-check",     "gmap",            "theorem2-grid",  "oracle",
        "verify-lemma3",   "verify-theorem1", "verify-oracle",  "verify-lemma4",  "verify-lemma5",
        "verify-chernoff", "verify-lemma3prime", "verify-gmap", "gen-subset",     "gen-sary-subset",
        "gen-tree"};
    return commands;
}

int run_pipeline(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
    try {
        Pipeline p(config, out);
        return p.run();
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ResourceLimitError& e) {
        err << "resource limit: " << e.what() << '\n';
        return kExitResource;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace treeramsey
