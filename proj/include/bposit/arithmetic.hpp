#pragma once

#include "bposit/bposit_codec.hpp"

namespace bposit {

/// Float-like intermediate form: value = (-1)^sign * (sig/2^sig_bits) * 2^scale
/// with sig/2^sig_bits in [1,2) for finite nonzero operands. Arithmetic on
/// Unpacked values is exact; rounding happens only at encode time.
struct Unpacked {
    ValueClass cls = ValueClass::Zero;
    int sign = 0;
    BigInt sig;
    int sig_bits = 0;
    std::int64_t scale = 0;

    static Unpacked from_value(const ExactValue& v);
    static Unpacked decode(const BitPattern& p);
    ExactValue to_value() const;

    bool operator==(const Unpacked&) const = default;
};

Unpacked add_exact(const Unpacked& a, const Unpacked& b);
Unpacked mul_exact(const Unpacked& a, const Unpacked& b);

/// Accumulator width from the format parameters: 32 + 4*rS*2^eS
/// (sign + 31 carry-guard bits + 2*range integer + 2*range fraction).
int quire_size_bits(const FormatSpec& spec);

/// Exact fused accumulator. The value lives in a 2's-complement fixed-point
/// register of quire_size_bits plus a few guard bits below the nominal
/// fraction: a b-posit's minpos is not a power of two, so products of two
/// maximal-regime values carry bits below the nominal LSB; the guard bits
/// keep accumulation exact. NaR operands latch the sticky nar flag.
struct Quire {
    FormatSpec spec;
    BigInt acc;  // signed; LSB weight 2^-(2*range + guard_bits)
    bool nar_flag = false;
    int quire_bits = 0;
    int guard_bits = 0;
    std::int64_t range = 0;  // rS * 2^eS

    static Quire make(const FormatSpec& spec);
    bool is_zero() const { return !nar_flag && acc == 0; }
};

/// q += a*b exactly (functional update).
Quire quire_accumulate(Quire q, const BitPattern& a, const BitPattern& b);
/// Adds a single decoded value exactly.
Quire quire_add_value(Quire q, const ExactValue& v);
/// One rounding of the accumulated total into the format.
BitPattern quire_read(const Quire& q);
/// Hex dump of the nominal quire window (quire_size_bits wide, 2's
/// complement); guard bits below the window are not shown.
std::string quire_to_hex(const Quire& q);

}  // namespace bposit
