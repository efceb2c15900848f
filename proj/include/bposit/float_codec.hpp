#pragma once

#include "bposit/fields.hpp"

namespace bposit {

enum class FloatClass { Zero, Subnormal, Normal, Inf, NaN };

/// Recoded float: one extra (signed) exponent bit and a normalized
/// significand, so subnormal inputs behave like normal ones downstream.
/// Total recoded width is n+1 (sign + (exp_width+1) + frac_width).
/// significand = sig_num / 2^sig_bits; in [1,2) for finite nonzero.
struct RecodedFloat {
    FloatClass cls = FloatClass::Zero;
    int sign = 0;
    std::int64_t signed_exp = 0;
    std::uint64_t sig_num = 0;
    int sig_bits = 0;

    ExactValue to_value() const;
    std::string to_string() const;  // "class|signedExp|significand"

    bool operator==(const RecodedFloat&) const = default;
};

/// Classifies, unbiases the exponent, prepends the hidden bit, and
/// normalizes subnormals (significand MSB becomes 1, exponent absorbs the
/// leading-zero count). Total over all patterns.
RecodedFloat decode_float(const BitPattern& p);

/// Back to IEEE bits: re-bias, right-shift subnormals into place, force
/// the special encodings, canonicalize NaN. Rounds to nearest-even when
/// the significand carries more precision than the target fraction.
BitPattern encode_float(const RecodedFloat& r, const FormatSpec& spec);

/// Nearest IEEE value under round-to-nearest-even with gradual underflow;
/// overflow goes to infinity. Used by the accuracy sweeps.
BitPattern round_rational_to_float(const BigRat& x, const FormatSpec& spec);

int recoded_width(const FormatSpec& spec);

}  // namespace bposit
