#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace bposit {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidFormat : Error {
    using Error::Error;
};
struct FormatMismatch : Error {
    using Error::Error;
};
struct FieldOutOfRange : Error {
    using Error::Error;
};
struct InvalidRegimeValue : Error {
    using Error::Error;
};
struct WidthMismatch : Error {
    using Error::Error;
};
struct UnsupportedKindForSpec : Error {
    using Error::Error;
};

enum class FormatKind { BPosit, StandardPosit, IeeeBinary };

/// Describes one concrete number layout. Posit-family formats are the
/// tuple <n, max_regime, exp_size>; a standard posit <n, eS> behaves like
/// a b-posit with max_regime = n-1. IEEE formats carry exponent/fraction
/// widths for binary16/32/64.
struct FormatSpec {
    FormatKind kind = FormatKind::BPosit;
    int n = 0;
    int max_regime = 0;  // posit family: regime capped at this many bits
    int exp_size = 0;    // posit family: exponent field width
    int exp_width = 0;   // IEEE only
    int frac_width = 0;  // IEEE only

    static FormatSpec bposit(int n, int max_regime, int exp_size);
    static FormatSpec standard_posit(int n, int exp_size);
    static FormatSpec ieee(int n);

    /// Parses "bposit:N:rS:eS", "posit:N:eS", or "ieee:16|32|64".
    static FormatSpec parse(const std::string& text);
    std::string to_string() const;

    bool is_posit_family() const { return kind != FormatKind::IeeeBinary; }
    /// Regime cap actually in effect (n-1 for standard posits).
    int regime_cap() const
    {
        return kind == FormatKind::StandardPosit ? n - 1 : max_regime;
    }
    /// A b-posit <n, n-1, eS> decodes identically to standard posit <n, eS>.
    bool standard_equivalent() const
    {
        return kind == FormatKind::BPosit && max_regime == n - 1;
    }

    /// Fraction bits available when the regime occupies `regime_size` bits.
    int frac_bits_at(int regime_size) const;
    /// Widest fraction (smallest regime) for posits; frac_width for IEEE.
    int max_frac_bits() const;
    /// Bits the regime occupies for regime value r, including the
    /// terminating bit unless the cap (or the word end) cuts the run short.
    int regime_size_for(int r) const;

    bool operator==(const FormatSpec&) const = default;
};

/// Throws InvalidFormat unless the spec satisfies every layout invariant;
/// returns the spec unchanged otherwise.
FormatSpec validate_format(const FormatSpec& spec);

/// An n-bit encoding tagged with its format. Bits above n are always zero.
struct BitPattern {
    std::uint64_t bits = 0;
    FormatSpec spec;

    BitPattern() = default;
    BitPattern(std::uint64_t bits, const FormatSpec& spec);

    std::uint64_t mask() const
    {
        return spec.n >= 64 ? ~0ULL : ((1ULL << spec.n) - 1);
    }
    /// The word reinterpreted as an n-bit 2's-complement integer.
    std::int64_t as_signed() const;
    bool sign_bit() const { return (bits >> (spec.n - 1)) & 1; }

    std::string to_hex() const;
    static BitPattern from_hex(const std::string& s, const FormatSpec& spec);
    /// Accepts "0x..." hex or an n-bit binary string; '|' and spaces may
    /// annotate field boundaries ("0|000001|10000|0000").
    static BitPattern parse(const std::string& s, const FormatSpec& spec);

    bool operator==(const BitPattern&) const = default;
};

/// Signed-integer comparison of the raw words; NaR (10...0) sorts below
/// every other posit. Throws FormatMismatch when the specs differ.
std::strong_ordering compare_as_posit(const BitPattern& a,
                                      const BitPattern& b);

/// 2's complement within the word width (posit negation).
BitPattern twos_complement(const BitPattern& p);

}  // namespace bposit
