#include "treeramsey/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "treeramsey/errors.hpp"

namespace treeramsey {

ChiSquareResult chi_square_homogeneity(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    if (a.size() != b.size()) throw DomainError("chi-square: category vectors differ in length");
    const double na = static_cast<double>(std::accumulate(a.begin(), a.end(), std::uint64_t{0}));
    const double nb = static_cast<double>(std::accumulate(b.begin(), b.end(), std::uint64_t{0}));
    if (na == 0 || nb == 0) throw DomainError("chi-square: empty sample");
    const double total = na + nb;

    // Pool sparse categories: expected count under homogeneity is
    // (a_i + b_i) * n_x / total; merge while the smaller expectation is < 5.
    std::vector<std::pair<double, double>> bins;
    std::pair<double, double> tail{0, 0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double pooled = static_cast<double>(a[i] + b[i]);
        if (pooled == 0) continue;
        const double smaller = pooled * std::min(na, nb) / total;
        if (smaller < 5) {
            tail.first += static_cast<double>(a[i]);
            tail.second += static_cast<double>(b[i]);
        } else {
            bins.emplace_back(static_cast<double>(a[i]), static_cast<double>(b[i]));
        }
    }
    if (tail.first + tail.second > 0) {
        const double smaller = (tail.first + tail.second) * std::min(na, nb) / total;
        if (smaller < 5 && !bins.empty()) {
            auto it = std::min_element(bins.begin(), bins.end(), [](const auto& x, const auto& y) {
                return x.first + x.second < y.first + y.second;
            });
            it->first += tail.first;
            it->second += tail.second;
        } else {
            bins.push_back(tail);
        }
    }

    ChiSquareResult result;
    result.bins = static_cast<int>(bins.size());
    if (bins.size() < 2) return result;  // a single category carries no evidence against homogeneity
    for (const auto& [xa, xb] : bins) {
        const double pooled = xa + xb;
        const double ea = pooled * na / total;
        const double eb = pooled * nb / total;
        result.statistic += (xa - ea) * (xa - ea) / ea + (xb - eb) * (xb - eb) / eb;
    }
    result.degrees_of_freedom = result.bins - 1;
    const boost::math::chi_squared_distribution<double> dist(result.degrees_of_freedom);
    result.p_value = boost::math::cdf(boost::math::complement(dist, result.statistic));
    return result;
}

double binomial_upper_bound(std::uint64_t successes, std::uint64_t trials, double confidence) {
    if (trials == 0) throw DomainError("binomial bound needs at least one trial");
    if (successes >= trials) return 1.0;
    return boost::math::ibeta_inv(static_cast<double>(successes + 1), static_cast<double>(trials - successes),
                                  confidence);
}

MeanStats mean_and_standard_error(const std::vector<double>& xs) {
    MeanStats s;
    if (xs.empty()) return s;
    const double n = static_cast<double>(xs.size());
    s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    if (xs.size() < 2) return s;
    double ss = 0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.standard_error = std::sqrt(ss / (n - 1) / n);
    return s;
}

}  // namespace treeramsey
