// treeramsey: command-line front end. Every command prints one verdict line
// last; artifacts go to --output or, without it, to stdout before the verdict.

#include <iostream>
#include <map>
#include <sstream>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "treeramsey/experiments.hpp"
#include "treeramsey/simd/bitset_kernels.hpp"

namespace {

using treeramsey::ExperimentConfig;

struct CommandSpec {
    const char* help;
    const char* flags;  // space separated
};

const std::map<std::string, CommandSpec>& command_specs() {
    static const std::map<std::string, CommandSpec> specs{
        {"weight", {"exact weight of a subset", "subset-file"}},
        {"signatures", {"signature family S(H)", "subset-file depth-cap output"}},
        {"max-depth", {"largest replica depth in H", "subset-file depth-cap"}},
        {"extract", {"replica witness for a signature or a depth", "subset-file signature d depth-cap output"}},
        {"theorem1", {"threshold 2^w > sum_{i<d} C(n,i)", "n d weight"}},
        {"random-split", {"random split coloring with coin audit", "n seed eager output"}},
        {"random-fit", {"random fit on one branch with martingale trace", "n seed output"}},
        {"mono-replica", {"monochromatic replica search", "coloring-file d depth-cap output"}},
        {"t2free", {"T_2-free coloring with at most k colors", "n k seed attempts output"}},
        {"block-color", {"block coloring of T_{(d-1)n}", "coloring-file d output"}},
        {"mc-lemma6", {"Monte Carlo colors used by random fit", "n trials seed output"}},
        {"entropy", {"binary entropy (--epsilon) or its inverse (--delta)", "epsilon delta"}},
        {"chernoff", {"entropy bound on a partial binomial sum", "n epsilon"}},
        {"arith-replica", {"replica whose levels form an l-term progression", "subset-file l delta depth-cap output"}},
        {"sary-weight", {"exact weight of an s-ary subset", "subset-file"}},
        {"sary-signatures", {"signature family of an s-ary subset", "subset-file depth-cap output"}},
        {"sary-check", {"s-ary threshold (s/(s-1))^w > sum C(n,i)/(s-1)^i", "n d s weight"}},
        {"gmap", {"g-map of a general tree and the leaf bound", "tree-file output"}},
        {"theorem2-grid", {"least sufficient depths over a (d, k) grid", "d-min d-max k-min k-max construction seed output"}},
        {"oracle", {"brute-force embeddings of T_d, compared with the DP", "subset-file d output"}},
        {"verify-lemma3", {"|S(H)| >= 2^w(H) on random H", "n trials seed output"}},
        {"verify-theorem1", {"threshold implies a replica", "n d trials seed output"}},
        {"verify-oracle", {"DP family equals brute force", "n trials seed output"}},
        {"verify-lemma4", {"random split has no monochromatic T_2", "n trials seed output"}},
        {"verify-lemma5", {"random split and random fit agree on a branch", "n trials seed leaf output"}},
        {"verify-chernoff", {"entropy bound over n <= N and eps = 0.05..0.45", "n output"}},
        {"verify-lemma3prime", {"weighted signature chain on random s-ary H", "n s trials seed output"}},
        {"verify-gmap", {"leaf bound and replica transport on random trees", "n s trials seed output"}},
        {"gen-subset", {"random subset of T_n", "n p seed output"}},
        {"gen-sary-subset", {"random subset of T_{n,s}", "n s p seed output"}},
        {"gen-tree", {"random tree with all leaves on level n-1", "n s seed output"}},
    };
    return specs;
}

void add_flags(CLI::App* sub, const std::string& flags, ExperimentConfig& c) {
    std::istringstream in(flags);
    std::string f;
    while (in >> f) {
        if (f == "n") sub->add_option("--n", c.n, "tree depth");
        else if (f == "d") sub->add_option("--d", c.d, "replica depth");
        else if (f == "k") sub->add_option("--k", c.k, "color budget");
        else if (f == "s") sub->add_option("--s", c.s, "arity");
        else if (f == "l") sub->add_option("--l", c.l, "progression length");
        else if (f == "d-min") sub->add_option("--d-min", c.d_min);
        else if (f == "d-max") sub->add_option("--d-max", c.d_max);
        else if (f == "k-min") sub->add_option("--k-min", c.k_min);
        else if (f == "k-max") sub->add_option("--k-max", c.k_max);
        else if (f == "delta") sub->add_option("--delta", c.delta);
        else if (f == "epsilon") sub->add_option("--epsilon", c.epsilon);
        else if (f == "p") sub->add_option("--p", c.p, "inclusion probability (default 0.5)");
        else if (f == "seed") sub->add_option("--seed", c.seed, "RNG seed (required)");
        else if (f == "trials") sub->add_option("--trials", c.trials);
        else if (f == "attempts") sub->add_option("--attempts", c.attempts);
        else if (f == "leaf") sub->add_option("--leaf", c.leaf);
        else if (f == "weight") sub->add_option("--weight", c.weight, "p/q or decimal")->required();
        else if (f == "signature") {
            sub->add_option("--signature", c.signature, "comma-separated levels")
                ->each([&c](const std::string&) { c.has_signature = true; });
        }
        else if (f == "subset-file") sub->add_option("--subset-file", c.subset_file);
        else if (f == "coloring-file") sub->add_option("--coloring-file", c.coloring_file);
        else if (f == "tree-file") sub->add_option("--tree-file", c.tree_file);
        else if (f == "output") sub->add_option("--output,-o", c.output, "artifact file");
        else if (f == "eager") sub->add_flag("--eager", c.eager, "materialize forbidden sets");
        else if (f == "construction") sub->add_flag("--construction", c.construction, "add the random split column");
        else if (f == "depth-cap") sub->add_option("--depth-cap", c.depth_cap, "family depth cap (default 20)");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ramsey machinery for complete binary trees"};
    app.require_subcommand(1);
    std::string kernels = "auto";
    app.add_option("--kernels", kernels, "bitset kernels: auto, scalar, avx2, neon")
        ->check(CLI::IsMember({"auto", "scalar", "avx2", "neon"}));

    ExperimentConfig config;
    for (const auto& [name, spec] : command_specs()) {
        CLI::App* sub = app.add_subcommand(name, spec.help);
        add_flags(sub, spec.flags, config);
        sub->callback([&config, name = name] { config.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : treeramsey::kExitUsage;
    }

    namespace simd = treeramsey::simd;
    if (kernels != "auto") {
        const simd::Isa isa = kernels == "scalar" ? simd::Isa::kScalar
                              : kernels == "avx2" ? simd::Isa::kAvx2
                                                  : simd::Isa::kNeon;
        if (!simd::force_kernels(isa)) {
            std::cerr << "usage error: " << kernels << " kernels are not available on this machine\n";
            return treeramsey::kExitUsage;
        }
    }
    return treeramsey::run_pipeline(config, std::cout, std::cerr);
}
