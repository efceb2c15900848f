#pragma once

// Test-only oracles, kept independent of the library's codec paths: a
// brute-force nearest-value search over enumerated patterns and a direct
// bit-formula float evaluator.

#include "bposit/accuracy.hpp"
#include "bposit/bposit_codec.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace bposit::testing {

/// All positive finite patterns of a small format with their exact values,
/// ordered by pattern (equivalently by value).
struct ValueTable {
    FormatSpec spec;
    std::vector<BigRat> values;  // values[i] = value of pattern i+1

    static ValueTable build(const FormatSpec& spec)
    {
        ValueTable t;
        t.spec = spec;
        const std::uint64_t maxpat = (1ULL << (spec.n - 1)) - 1;
        t.values.reserve(maxpat);
        for (std::uint64_t p = 1; p <= maxpat; ++p) {
            t.values.push_back(
                decode_any_value(BitPattern(p, spec)).to_rational());
        }
        return t;
    }

    /// Brute-force nearest representable pattern with saturation and the
    /// even-pattern tie rule; |x| handled by the caller.
    std::uint64_t nearest_positive(const BigRat& x) const
    {
        if (x <= values.front()) {
            return 1;
        }
        if (x >= values.back()) {
            return values.size();
        }
        const auto it = std::upper_bound(values.begin(), values.end(), x);
        const std::uint64_t hi = (it - values.begin()) + 1;
        const std::uint64_t lo = hi - 1;
        const BigRat below = x - values[lo - 1];
        const BigRat above = values[hi - 1] - x;
        if (below < above) return lo;
        if (above < below) return hi;
        return (lo & 1) == 0 ? lo : hi;
    }

    BitPattern nearest(const BigRat& x) const
    {
        if (x == 0) {
            return BitPattern(0, spec);
        }
        const bool neg = x < 0;
        const std::uint64_t p = nearest_positive(neg ? BigRat(-x) : x);
        const BitPattern pos(p, spec);
        return neg ? twos_complement(pos) : pos;
    }
};

/// IEEE value straight from the encoding definition, bypassing the
/// recoded-form machinery entirely.
inline ExactValue float_value_by_formula(std::uint64_t bits,
                                         const FormatSpec& spec)
{
    const int ew = spec.exp_width;
    const int fw = spec.frac_width;
    const std::int64_t bias = (1LL << (ew - 1)) - 1;
    const bool neg = (bits >> (ew + fw)) & 1;
    const std::uint64_t e = (bits >> fw) & ((1ULL << ew) - 1);
    const std::uint64_t f = bits & ((1ULL << fw) - 1);
    if (e == (1ULL << ew) - 1) {
        return ExactValue::nar();  // Inf and NaN both map to the non-real
    }
    if (e == 0) {
        return ExactValue::real(neg, BigInt(f), 1 - bias - fw);
    }
    return ExactValue::real(neg, BigInt(f) + (BigInt(1) << fw),
                            static_cast<std::int64_t>(e) - bias - fw);
}

inline std::mt19937_64 seeded_rng(std::uint64_t seed)
{
    return std::mt19937_64(seed);
}

inline std::vector<std::uint64_t> random_words(int n_bits, std::size_t count,
                                               std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const std::uint64_t mask =
        n_bits >= 64 ? ~0ULL : ((1ULL << n_bits) - 1);
    std::vector<std::uint64_t> out(count);
    for (auto& w : out) {
        w = rng() & mask;
    }
    return out;
}

}  // namespace bposit::testing
