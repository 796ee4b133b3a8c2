#include "treeramsey/exact_power.hpp"

#include <cmath>
#include <limits>

#include "treeramsey/errors.hpp"

namespace treeramsey {

namespace mp = boost::multiprecision;

namespace {

int sign_of(int c) { return c < 0 ? -1 : (c > 0 ? 1 : 0); }

bool is_power_of_two(const BigInt& m) { return m > 0 && mp::lsb(m) == mp::msb(m); }

bool is_power_of_two(const BigInt& m, unsigned& exponent) {
    if (!is_power_of_two(m)) return false;
    exponent = static_cast<unsigned>(mp::msb(m));
    return true;
}

// Fractional-part comparison for 2^{(b-1) + r/2^e} against m, where
// 2^{b-1} < m < 2^b and 0 < r < 2^e. Returns +1/-1 or 0 when the working
// precision was insufficient.
int compare_fraction_bits(const BigInt& r, unsigned e, const BigInt& m, unsigned b, unsigned precision) {
    // y = m / 2^{b-1} in [1, 2), held as [lo, hi] * 2^{-precision}.
    BigInt lo;
    BigInt hi;
    if (precision >= b - 1) {
        lo = m << (precision - (b - 1));
        hi = lo;
    } else {
        lo = m >> ((b - 1) - precision);
        hi = lo + 1;
    }
    const BigInt two = BigInt(1) << (precision + 1);
    const BigInt round_up = (BigInt(1) << precision) - 1;
    for (unsigned i = 1; i <= e; ++i) {
        lo = (lo * lo) >> precision;
        hi = (hi * hi + round_up) >> precision;
        int bit = 0;
        if (lo >= two) {
            bit = 1;
            lo >>= 1;
            hi = (hi + 1) >> 1;
        } else if (hi < two) {
            bit = 0;
        } else {
            return 0;
        }
        const int frac_bit = mp::bit_test(r, e - i) ? 1 : 0;
        if (frac_bit != bit) return frac_bit > bit ? 1 : -1;
    }
    // All e exponent bits matched and log2 m has further nonzero bits
    // (m is not a power of two), so log2 m is the larger.
    return -1;
}

double log2_rational(const Rational& x) {
    return log2_big(mp::numerator(x)) - log2_big(mp::denominator(x));
}

}  // namespace

BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt c = 1;
    for (unsigned i = 1; i <= k; ++i) {
        c *= n - k + i;
        c /= i;
    }
    return c;
}

BigInt binomial_prefix_sum(unsigned n, unsigned d) {
    BigInt sum = 0;
    BigInt term = 1;  // C(n, 0)
    for (unsigned i = 0; i < d && i <= n; ++i) {
        sum += term;
        term = term * (n - i) / (i + 1);
    }
    return sum;
}

double log2_big(const BigInt& x) {
    if (x <= 0) throw DomainError("log2 of a non-positive integer");
    const auto top = static_cast<long>(mp::msb(x));
    if (top < 63) return std::log2(static_cast<double>(static_cast<std::uint64_t>(x)));
    const auto head = static_cast<std::uint64_t>(x >> (top - 63));
    return std::log2(static_cast<long double>(head)) + static_cast<double>(top - 63);
}

int compare_pow2(const BigInt& p, unsigned e, const BigInt& m) {
    if (p < 0) throw DomainError("compare_pow2 requires a non-negative exponent");
    if (m < 1) throw DomainError("compare_pow2 requires m >= 1");
    const auto b = static_cast<unsigned>(mp::msb(m)) + 1;  // bit length of m
    const BigInt whole = p >> e;
    const BigInt r = p - (whole << e);
    const BigInt ceiling = whole + (r > 0 ? 1 : 0);

    if (whole >= b) return 1;
    if (ceiling <= b - 1) {
        // 2^w <= 2^{b-1} <= m, equal only when both steps are equalities.
        return (r == 0 && whole == b - 1 && is_power_of_two(m)) ? 0 : -1;
    }
    // Here w = (b-1) + r/2^e with 0 < r < 2^e.
    if (is_power_of_two(m)) return 1;

    unsigned precision = std::max<unsigned>(b, 64) + 2 * e + 64;
    for (;;) {
        const int verdict = compare_fraction_bits(r, e, m, b, precision);
        if (verdict != 0) return verdict;
        if (precision > (1U << 22)) throw ResourceLimitError("compare_pow2: precision cap reached");
        precision *= 2;
    }
}

int compare_pow2(const DyadicWeight& w, const BigInt& m) {
    return compare_pow2(BigInt(w.numerator()), w.log2_denominator(), m);
}

int compare_power(const Rational& base, const Rational& exponent, const Rational& rhs) {
    if (base <= 0) throw DomainError("compare_power: base must be positive");
    if (rhs <= 0) throw DomainError("compare_power: right-hand side must be positive");
    if (base == 1 || exponent == 0) return sign_of(Rational(1).compare(rhs));

    // Exact dyadic route for 2^{p/2^e} against an integer.
    const BigInt& exp_den = mp::denominator(exponent);
    unsigned e = 0;
    if (base == 2 && exponent > 0 && mp::denominator(rhs) == 1 && is_power_of_two(exp_den, e)) {
        return compare_pow2(mp::numerator(exponent), e, mp::numerator(rhs));
    }

    const double lhs_log = exponent.convert_to<double>() * log2_rational(base);
    const double rhs_log = log2_rational(rhs);
    const double diff = lhs_log - rhs_log;
    const double margin = 1e-9 * (1.0 + std::fabs(lhs_log) + std::fabs(rhs_log));
    if (std::isfinite(diff) && std::fabs(diff) > margin) return diff > 0 ? 1 : -1;

    // base^{a/b} vs rhs  <=>  base^a vs rhs^b.
    Rational bs = base;
    BigInt a = mp::numerator(exponent);
    if (a < 0) {
        bs = 1 / bs;
        a = -a;
    }
    const BigInt& den = exp_den;
    const BigInt& u = mp::numerator(bs);
    const BigInt& v = mp::denominator(bs);
    const BigInt& pn = mp::numerator(rhs);
    const BigInt& qd = mp::denominator(rhs);
    const double estimate = a.convert_to<double>() * (static_cast<double>(mp::msb(u) + mp::msb(v)) + 2) +
                            den.convert_to<double>() * (static_cast<double>(mp::msb(pn) + mp::msb(qd)) + 2);
    if (estimate > static_cast<double>(kMaxExactPowerBits)) {
        throw ResourceLimitError("compare_power: exact comparison exceeds the big-integer size cap");
    }
    const auto ai = a.convert_to<unsigned>();
    const auto bi = den.convert_to<unsigned>();
    const BigInt left = mp::pow(u, ai) * mp::pow(qd, bi);
    const BigInt right = mp::pow(pn, bi) * mp::pow(v, ai);
    return sign_of(left.compare(right));
}

Rational to_rational(const DyadicWeight& w) {
    return Rational(BigInt(w.numerator()), BigInt(1) << w.log2_denominator());
}

std::pair<BigInt, unsigned> exact_dyadic(double value) {
    if (!std::isfinite(value) || value < 0) throw DomainError("exact_dyadic needs a finite non-negative value");
    if (value == 0) return {BigInt(0), 0};
    int exp = 0;
    const double mant = std::frexp(value, &exp);  // value = mant * 2^exp, mant in [0.5, 1)
    constexpr int kBits = std::numeric_limits<double>::digits;
    const auto m = static_cast<std::uint64_t>(std::ldexp(mant, kBits));
    int shift = exp - kBits;  // value = m * 2^shift
    BigInt p(m);
    if (shift >= 0) return {p << shift, 0};
    // Strip trailing zeros so the denominator is minimal.
    unsigned e = static_cast<unsigned>(-shift);
    while (e > 0 && !mp::bit_test(p, 0)) {
        p >>= 1;
        --e;
    }
    return {p, e};
}

}  // namespace treeramsey
