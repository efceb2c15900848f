#pragma once

#include "bposit/fields.hpp"

namespace bposit {

/// One-hot regime-size selector. Element i (printed left to right) set
/// means the regime occupies min(i+2, cap) bits; the last two elements
/// both select the capped size (terminated at the cap vs by an opposite
/// bit exactly at the cap boundary).
struct OneHotRegime {
    std::uint64_t bits = 0;  // bit i = element i
    int width = 0;

    int index() const;
    std::string to_string() const;
    bool operator==(const OneHotRegime&) const = default;
};

/// Raw datapath outputs of the parallel decoder. Field conventions follow
/// the hardware: the regime value is read straight off the word
/// (priority-encoded), the exponent is the raw bits XORed with the sign
/// (1's complement), the fraction stays in signed form, and exp_cin
/// carries the deferred +1 that completes the 2's complement downstream.
struct DecodeResult {
    ValueClass cls = ValueClass::Real;
    int sign = 0;
    OneHotRegime one_hot;
    std::uint32_t regime_raw = 0;  // Table-3-style encoding, regime_raw_width bits
    int regime_raw_width = 0;
    std::uint64_t exp_xored = 0;
    std::uint64_t frac_raw = 0;  // left-aligned in frac_width bits
    int frac_width = 0;
    int exp_cin = 0;

    bool operator==(const DecodeResult&) const = default;
};

/// Sign-plus-magnitude field reading: the fields of |value|, the form an
/// arithmetic unit works with. For negative patterns these are the fields
/// of the word's 2's complement.
struct MagnitudeFields {
    ValueClass cls = ValueClass::Real;
    int sign = 0;
    int regime = 0;
    std::uint64_t exponent = 0;
    std::uint64_t frac_num = 0;
    int frac_bits = 0;

    bool operator==(const MagnitudeFields&) const = default;
};

struct RegimeString {
    std::uint32_t bits = 0;  // value of the string read MSB-first
    int width = 0;

    std::string to_string() const;
    bool operator==(const RegimeString&) const = default;
};

/// Direct bit-scan decoder; the oracle every other codec path is checked
/// against. Total: every pattern decodes, ghost bits complete short
/// exponent/fraction fields with zeros.
FieldSet decode_reference(const BitPattern& p);

/// XORs the bits below the regime MSB with the regime MSB and priority-maps
/// the result to the one-hot regime-size vector.
OneHotRegime regime_one_hot(const BitPattern& p);

/// Parallel decoder: one-hot size detection, a single field mux across the
/// regime-size tap points, priority-encoded regime value. Matches
/// decode_reference on every pattern once exp_cin is accounted for.
DecodeResult decode_fast(const BitPattern& p);

/// Raw FieldSet carried by a DecodeResult (equals decode_reference).
FieldSet decode_result_fields(const DecodeResult& d, const FormatSpec& spec);

/// Magnitude fields from the fast-decode outputs: applies exp_cin to the
/// combined regime:exponent integer and 2's-complements the fraction.
MagnitudeFields decode_result_magnitude(const DecodeResult& d,
                                        const FormatSpec& spec);

MagnitudeFields to_magnitude(const FieldSet& raw, const FormatSpec& spec);
FieldSet from_magnitude(const MagnitudeFields& m, const FormatSpec& spec);

/// Regime size from a 4-bit regime value (cap 6): XOR the low three bits
/// with the MSB, then map the folded value.
int regime_size_of(unsigned regime4);
/// Generalized fold for an arbitrary cap; width is the regime-value width.
int regime_size_of_general(unsigned regime_bits, int width, int cap);

/// Binary-decoder line feeding the regime-string construction: one-hot of
/// the folded regime value, MSB-first across cap bits.
std::uint32_t regime_decoder_line(unsigned folded, int cap);

/// Final regime string (run plus terminator, or capped run) for magnitude
/// regime value regime4 under the given word sign; cap-6 instantiation.
RegimeString regime_string_of(unsigned regime4, int sign);
RegimeString regime_string_of_general(unsigned regime_bits, int width,
                                      int sign, int cap);

/// Parallel encoder datapath: sign-XOR on regime and exponent, deferred
/// carry for the zero-fraction case, regime string via the binary decoder,
/// exponent-overflow regime adjustment, width-selected packing.
BitPattern encode_from_magnitude(const MagnitudeFields& m,
                                 const FormatSpec& spec);

/// Packs a raw FieldSet; exact inverse of decode_reference on every
/// pattern. Throws FieldOutOfRange for inconsistent fields.
BitPattern encode_fields(const FieldSet& f, const FormatSpec& spec);

/// Round-to-nearest, ties decided by the even encoded pattern. Saturates:
/// nonzero magnitudes below minpos round to ±minpos, above maxpos to
/// ±maxpos; finite values never round to Zero or NaR.
BitPattern round_to_format(const ExactValue& x, const FormatSpec& spec);
BitPattern round_rational(const BigRat& x, const FormatSpec& spec);

/// "s|regime|exp|frac" view of a pattern's stored bits.
std::string to_annotated_string(const BitPattern& p);

}  // namespace bposit
