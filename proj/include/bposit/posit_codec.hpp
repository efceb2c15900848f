#pragma once

#include "bposit/fields.hpp"

namespace bposit {

/// Leading-bit counter result over the bits below the sign: length of the
/// leading run and the repeated bit value.
struct LbcResult {
    int run_length = 0;
    int run_bit = 0;

    bool operator==(const LbcResult&) const = default;
};

LbcResult leading_bit_count(const BitPattern& p);

/// Sequential-style standard posit decode: exception check, LBC, then a
/// left shift exposing exponent and fraction. Produces the same raw
/// FieldSet as decode_reference under the equivalent <n, n-1, eS> b-posit.
FieldSet decode_standard(const BitPattern& p);

/// Packs raw fields back into a standard posit word; exact inverse of
/// decode_standard.
BitPattern encode_standard(const FieldSet& f, const FormatSpec& spec);

}  // namespace bposit
