#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace treeramsey {

struct ChiSquareResult {
    double statistic = 0;
    int degrees_of_freedom = 0;
    double p_value = 1;
    int bins = 0;
};

// Two-sample chi-square test of homogeneity on a 2 x K table. Categories
// whose pooled expected count falls below 5 are merged into one tail bin.
ChiSquareResult chi_square_homogeneity(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b);

template <class Key>
ChiSquareResult chi_square_homogeneity(const std::map<Key, std::uint64_t>& a, const std::map<Key, std::uint64_t>& b) {
    std::map<Key, std::pair<std::uint64_t, std::uint64_t>> joint;
    for (const auto& [k, c] : a) joint[k].first += c;
    for (const auto& [k, c] : b) joint[k].second += c;
    std::vector<std::uint64_t> ca;
    std::vector<std::uint64_t> cb;
    for (const auto& [k, pair] : joint) {
        ca.push_back(pair.first);
        cb.push_back(pair.second);
    }
    return chi_square_homogeneity(ca, cb);
}

// One-sided Clopper-Pearson upper bound for a binomial proportion.
double binomial_upper_bound(std::uint64_t successes, std::uint64_t trials, double confidence);

struct MeanStats {
    double mean = 0;
    double standard_error = 0;
};

MeanStats mean_and_standard_error(const std::vector<double>& xs);

}  // namespace treeramsey
