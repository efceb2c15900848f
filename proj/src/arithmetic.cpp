#include "bposit/arithmetic.hpp"

#include <sstream>

namespace bposit {

Unpacked Unpacked::from_value(const ExactValue& v)
{
    Unpacked u;
    if (v.is_zero()) {
        u.cls = ValueClass::Zero;
        return u;
    }
    if (v.is_nar()) {
        u.cls = ValueClass::NaR;
        return u;
    }
    u.cls = ValueClass::Real;
    u.sign = v.negative ? 1 : 0;
    u.sig = v.significand;
    u.sig_bits =
        static_cast<int>(boost::multiprecision::msb(v.significand));
    u.scale = v.scale + u.sig_bits;
    return u;
}

Unpacked Unpacked::decode(const BitPattern& p)
{
    return from_value(fields_to_value(decode_reference(p), p.spec));
}

ExactValue Unpacked::to_value() const
{
    switch (cls) {
    case ValueClass::Zero:
        return ExactValue::zero();
    case ValueClass::NaR:
        return ExactValue::nar();
    default:
        return ExactValue::real(sign != 0, sig, scale - sig_bits);
    }
}

Unpacked add_exact(const Unpacked& a, const Unpacked& b)
{
    return Unpacked::from_value(add(a.to_value(), b.to_value()));
}

Unpacked mul_exact(const Unpacked& a, const Unpacked& b)
{
    return Unpacked::from_value(mul(a.to_value(), b.to_value()));
}

int quire_size_bits(const FormatSpec& spec)
{
    if (!spec.is_posit_family()) {
        throw InvalidFormat("quire is defined for posit-family formats");
    }
    validate_format(spec);
    return 32 + 4 * spec.regime_cap() * (1 << spec.exp_size);
}

Quire Quire::make(const FormatSpec& spec)
{
    Quire q;
    q.spec = spec;
    q.quire_bits = quire_size_bits(spec);
    q.range = static_cast<std::int64_t>(spec.regime_cap())
              << spec.exp_size;
    q.guard_bits = 2 * spec.frac_bits_at(spec.regime_cap());
    q.acc = 0;
    return q;
}

Quire quire_add_value(Quire q, const ExactValue& v)
{
    if (v.is_nar()) {
        q.nar_flag = true;
        return q;
    }
    if (v.is_zero() || q.nar_flag) {
        return q;
    }
    const std::int64_t lsb_scale = -(2 * q.range + q.guard_bits);
    const std::int64_t sh = v.scale - lsb_scale;
    if (sh < 0) {
        throw std::logic_error("product below the quire guard band");
    }
    BigInt t = v.significand << sh;
    if (v.negative) {
        q.acc -= t;
    } else {
        q.acc += t;
    }
    return q;
}

Quire quire_accumulate(Quire q, const BitPattern& a, const BitPattern& b)
{
    if (a.spec != q.spec || b.spec != q.spec) {
        throw FormatMismatch("quire and operands must share a format");
    }
    const ExactValue va = fields_to_value(decode_reference(a), a.spec);
    const ExactValue vb = fields_to_value(decode_reference(b), b.spec);
    return quire_add_value(std::move(q), mul(va, vb));
}

BitPattern quire_read(const Quire& q)
{
    if (q.nar_flag) {
        return BitPattern(1ULL << (q.spec.n - 1), q.spec);
    }
    if (q.acc == 0) {
        return BitPattern(0, q.spec);
    }
    const std::int64_t lsb_scale = -(2 * q.range + q.guard_bits);
    const bool neg = q.acc < 0;
    const ExactValue v =
        ExactValue::real(neg, neg ? BigInt(-q.acc) : q.acc, lsb_scale);
    return round_to_format(v, q.spec);
}

std::string quire_to_hex(const Quire& q)
{
    const int total = q.quire_bits + q.guard_bits;
    BigInt w = q.acc;
    if (w < 0) {
        w += BigInt(1) << total;  // 2's complement wrap
    }
    w >>= q.guard_bits;
    std::ostringstream os;
    const int digits = (q.quire_bits + 3) / 4;
    for (int i = digits - 1; i >= 0; --i) {
        const unsigned nib =
            ((w >> (4 * i)) & 0xF).convert_to<unsigned>();
        os << "0123456789ABCDEF"[nib];
    }
    return os.str();
}

}  // namespace bposit
