#pragma once

#include "bposit/exact_value.hpp"
#include "bposit/format.hpp"

namespace bposit {

/// Decoded posit-family fields as read from the raw word (no negation for
/// negative patterns): sign s, regime value r, exponent e, fraction
/// f = frac_num / 2^frac_bits in [0,1), and the regime's occupied width.
/// Zero/NaR keep all numeric fields at zero.
struct FieldSet {
    ValueClass cls = ValueClass::Real;
    int sign = 0;
    int regime = 0;
    std::uint64_t exponent = 0;
    std::uint64_t frac_num = 0;
    int frac_bits = 0;
    int regime_size = 0;

    static FieldSet zero()
    {
        FieldSet f;
        f.cls = ValueClass::Zero;
        return f;
    }
    static FieldSet nar()
    {
        FieldSet f;
        f.cls = ValueClass::NaR;
        return f;
    }

    bool operator==(const FieldSet&) const = default;
};

/// Effective binary scale T = (1-2s)*(r*2^eS + e + s).
std::int64_t effective_scale(const FieldSet& f, const FormatSpec& spec);

/// Exact value (1-3s+f)*2^T of a raw field reading; Zero/NaR pass through.
ExactValue fields_to_value(const FieldSet& f, const FormatSpec& spec);

struct FormatExtremes {
    ExactValue minpos;
    ExactValue maxpos;
    std::int64_t log2_floor_minpos = 0;
    std::int64_t log2_ceil_maxpos = 0;
};

/// Extremes computed from the field layout alone (no codec involved):
/// maxpos is the value of 0111...1, minpos the value of 0...01.
FormatExtremes format_extremes(const FormatSpec& spec);

}  // namespace bposit
