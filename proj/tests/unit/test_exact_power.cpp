#include <doctest.h>

#include "treeramsey/errors.hpp"
#include "treeramsey/exact_power.hpp"
#include "treeramsey/rng.hpp"

using namespace treeramsey;

TEST_CASE("binomials") {
    CHECK(binomial(10, 3) == 120);
    CHECK(binomial(5, 7) == 0);
    CHECK(binomial_prefix_sum(2, 2) == 3);
    CHECK(binomial_prefix_sum(10, 0) == 0);
    CHECK(binomial_prefix_sum(12, 13) == 4096);
    CHECK(binomial_prefix_sum(100, 20) > BigInt(1) << 67);
}

TEST_CASE("compare_pow2 against 2^p vs m^(2^e)") {
    Rng rng(17);
    for (int i = 0; i < 3000; ++i) {
        const unsigned e = static_cast<unsigned>(rng() % 6);
        const BigInt p = static_cast<unsigned>(rng() % 200);
        const BigInt m = 1 + static_cast<unsigned>(rng() % 5000);
        const BigInt lhs = BigInt(1) << p.convert_to<unsigned>();
        const BigInt rhs = boost::multiprecision::pow(m, 1U << e);
        CHECK(compare_pow2(p, e, m) == sign(lhs - rhs));
    }
    // powers of two on the boundary
    CHECK(compare_pow2(BigInt(3), 0, BigInt(8)) == 0);
    CHECK(compare_pow2(BigInt(12), 2, BigInt(8)) == 0);
    CHECK(compare_pow2(BigInt(3), 1, BigInt(3)) < 0);  // 2^1.5 < 3
    CHECK(compare_pow2(DyadicWeight(2, 0), BigInt(3)) > 0);
}

TEST_CASE("compare_pow2 with deep fractions") {
    // 2^{p/2^40} against m near the boundary, checked through log2.
    const unsigned e = 40;
    const BigInt m(1000003);
    const double l = std::log2(1000003.0);
    const BigInt p_low = BigInt(static_cast<unsigned long long>((l - 1e-6) * std::ldexp(1.0, e)));
    const BigInt p_high = BigInt(static_cast<unsigned long long>((l + 1e-6) * std::ldexp(1.0, e)));
    CHECK(compare_pow2(p_low, e, m) < 0);
    CHECK(compare_pow2(p_high, e, m) > 0);
}

TEST_CASE("compare_power") {
    CHECK(compare_power(Rational(3, 2), Rational(2), Rational(9, 4)) == 0);
    CHECK(compare_power(Rational(3, 2), Rational(2), Rational(2)) > 0);
    CHECK(compare_power(Rational(3, 2), Rational(1), Rational(2)) < 0);
    CHECK(compare_power(Rational(2), Rational(5, 2), Rational(6)) < 0);  // 5.66 < 6
    CHECK(compare_power(Rational(2), Rational(3), Rational(8)) == 0);
    CHECK(compare_power(Rational(9), Rational(1, 2), Rational(3)) == 0);
    CHECK(compare_power(Rational(4, 9), Rational(-1, 2), Rational(3, 2)) == 0);
    CHECK(compare_power(Rational(3), Rational(0), Rational(1)) == 0);
    Rng rng(23);
    for (int i = 0; i < 500; ++i) {
        const int a = 1 + static_cast<int>(rng() % 9);
        const int b = 1 + static_cast<int>(rng() % 9);
        const int p = static_cast<int>(rng() % 13);
        const int q = 1 + static_cast<int>(rng() % 4);
        const int r = 1 + static_cast<int>(rng() % 50);
        // (a/b)^{p/q} vs r  <=>  a^p vs r^q b^p
        const BigInt lhs = boost::multiprecision::pow(BigInt(a), static_cast<unsigned>(p));
        const BigInt rhs = boost::multiprecision::pow(BigInt(r), static_cast<unsigned>(q)) *
                           boost::multiprecision::pow(BigInt(b), static_cast<unsigned>(p));
        CHECK(compare_power(Rational(a, b), Rational(p, q), Rational(r)) == sign(lhs - rhs));
    }
}

TEST_CASE("exact dyadic of doubles") {
    const auto [p, e] = exact_dyadic(0.75);
    CHECK(Rational(p, BigInt(1) << e) == Rational(3, 4));
    const auto [p2, e2] = exact_dyadic(72.5);
    CHECK(Rational(p2, BigInt(1) << e2) == Rational(145, 2));
    CHECK(to_rational(DyadicWeight(3, 2)) == Rational(3, 4));
}
