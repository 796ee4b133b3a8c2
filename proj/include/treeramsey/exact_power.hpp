#pragma once

// Exact decisions for inequalities of the form base^exponent > rhs, where a
// floating-point answer is not acceptable (the replica thresholds are strict).

#include <boost/multiprecision/cpp_int.hpp>

#include "treeramsey/tree_core.hpp"

namespace treeramsey {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt binomial(unsigned n, unsigned k);

// Σ_{i<d} C(n, i); zero for d = 0.
BigInt binomial_prefix_sum(unsigned n, unsigned d);

// log2 of a positive big integer, good to double precision.
double log2_big(const BigInt& x);

// Sign of 2^{p / 2^e} - m for p >= 0 and m >= 1.
//
// Bit-length fast paths settle every case except floor(p/2^e) = bitlen(m) - 1.
// The remaining case compares the e fractional bits of the exponent with the
// binary expansion of log2 m, produced one bit per squaring of m / 2^{bitlen-1}
// in interval fixed point. At most e squarings are performed; the working
// precision doubles until every bit decision is unambiguous.
int compare_pow2(const BigInt& p, unsigned e, const BigInt& m);
int compare_pow2(const DyadicWeight& w, const BigInt& m);

// Sign of base^exponent - rhs for base > 0, rhs > 0 and any rational exponent.
// Uses a float fast path with a wide margin, the dyadic routine above when it
// applies, and otherwise exact integer powers (ResourceLimitError beyond
// kMaxExactPowerBits).
int compare_power(const Rational& base, const Rational& exponent, const Rational& rhs);

inline constexpr std::size_t kMaxExactPowerBits = std::size_t{1} << 26;

Rational to_rational(const DyadicWeight& w);

// Exact dyadic value of a finite non-negative double: value = p / 2^e.
std::pair<BigInt, unsigned> exact_dyadic(double value);

}  // namespace treeramsey
