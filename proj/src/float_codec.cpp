#include "bposit/float_codec.hpp"

#include <bit>
#include <sstream>

namespace bposit {

namespace {

void require_ieee(const FormatSpec& spec)
{
    if (spec.kind != FormatKind::IeeeBinary) {
        throw UnsupportedKindForSpec("operation requires an IEEE format");
    }
}

std::uint64_t low_mask(int bits)
{
    return bits >= 64 ? ~0ULL : ((1ULL << bits) - 1);
}

std::int64_t bias_of(const FormatSpec& spec)
{
    return (1LL << (spec.exp_width - 1)) - 1;
}

}  // namespace

int recoded_width(const FormatSpec& spec)
{
    require_ieee(spec);
    return spec.n + 1;
}

ExactValue RecodedFloat::to_value() const
{
    switch (cls) {
    case FloatClass::Zero:
        return ExactValue::zero();
    case FloatClass::Inf:
    case FloatClass::NaN:
        return ExactValue::nar();
    default:
        return ExactValue::real(sign != 0, BigInt(sig_num),
                                signed_exp - sig_bits);
    }
}

std::string RecodedFloat::to_string() const
{
    std::ostringstream os;
    switch (cls) {
    case FloatClass::Zero:
        os << "Zero";
        break;
    case FloatClass::Subnormal:
        os << "Subnormal";
        break;
    case FloatClass::Normal:
        os << "Normal";
        break;
    case FloatClass::Inf:
        os << "Inf";
        break;
    case FloatClass::NaN:
        os << "NaN";
        break;
    }
    os << '|' << (sign ? '-' : '+') << '|' << signed_exp << '|' << sig_num
       << "/2^" << sig_bits;
    return os.str();
}

RecodedFloat decode_float(const BitPattern& p)
{
    require_ieee(p.spec);
    const int ew = p.spec.exp_width;
    const int fw = p.spec.frac_width;
    const std::int64_t bias = bias_of(p.spec);

    RecodedFloat r;
    r.sign = static_cast<int>((p.bits >> (ew + fw)) & 1);
    const std::uint64_t e_field = (p.bits >> fw) & low_mask(ew);
    const std::uint64_t frac = p.bits & low_mask(fw);

    if (e_field == low_mask(ew)) {
        r.cls = frac == 0 ? FloatClass::Inf : FloatClass::NaN;
        return r;
    }
    if (e_field == 0) {
        if (frac == 0) {
            r.cls = FloatClass::Zero;
            return r;
        }
        // subnormal: hidden bit 0; normalize so the significand is 1.xxx
        r.cls = FloatClass::Subnormal;
        const int lz = std::countl_zero(frac) - (64 - fw);
        r.sig_num = (frac << (lz + 1)) & low_mask(fw);
        r.sig_num |= 1ULL << fw;
        r.sig_bits = fw;
        r.signed_exp = 1 - bias - (lz + 1);
        return r;
    }
    r.cls = FloatClass::Normal;
    r.signed_exp = static_cast<std::int64_t>(e_field) - bias;
    r.sig_num = frac | (1ULL << fw);
    r.sig_bits = fw;
    return r;
}

namespace {

/// Rounds a positive exact magnitude into the format; handles gradual
/// underflow, returns all-ones exponent (inf) on overflow.
std::uint64_t encode_positive_magnitude(const BigRat& x,
                                        const FormatSpec& spec)
{
    const int ew = spec.exp_width;
    const int fw = spec.frac_width;
    const std::int64_t bias = bias_of(spec);
    const std::int64_t emin = 1 - bias;
    const std::int64_t emax_field = low_mask(ew) - 1;  // biased, finite

    // exponent of the leading bit
    const BigInt num = boost::multiprecision::numerator(x);
    const BigInt den = boost::multiprecision::denominator(x);
    std::int64_t e =
        static_cast<std::int64_t>(boost::multiprecision::msb(num)) -
        static_cast<std::int64_t>(boost::multiprecision::msb(den));
    {
        // e such that 2^e <= x < 2^(e+1)
        BigInt lhs = num;
        BigInt rhs = den;
        if (e >= 0) {
            rhs <<= e;
        } else {
            lhs <<= -e;
        }
        if (lhs < rhs) {
            --e;
        }
    }

    // quantization step 2^(q - fw) with q = max(e, emin)
    const std::int64_t q = std::max(e, emin);
    // m = round_even(x / 2^(q-fw))
    BigInt mn = num;
    BigInt md = den;
    const std::int64_t sh = q - fw;
    if (sh >= 0) {
        md <<= sh;
    } else {
        mn <<= -sh;
    }
    BigInt m = mn / md;
    const BigInt rem2 = (mn - m * md) * 2;
    if (rem2 > md || (rem2 == md && boost::multiprecision::bit_test(m, 0))) {
        ++m;
    }

    // m now holds the significand scaled to fw fractional bits at scale q
    std::int64_t ebiased;
    std::uint64_t frac_field;
    if (m >= (BigInt(1) << (fw + 1))) {
        // rounded up to the next binade
        ++e;
        if (e < emin) {
            throw std::logic_error("unreachable");
        }
        m >>= 1;
    }
    if (m == 0) {
        return 0;  // underflow to zero
    }
    if (boost::multiprecision::bit_test(m, fw)) {
        // normal
        const std::int64_t ee = std::max(e, emin);
        ebiased = ee + bias;
        if (ebiased > emax_field) {
            return low_mask(ew) << fw;  // infinity
        }
        frac_field =
            (m - (BigInt(1) << fw)).convert_to<std::uint64_t>();
    } else {
        // subnormal (q == emin, leading bit below the hidden position)
        ebiased = 0;
        frac_field = m.convert_to<std::uint64_t>();
    }
    return (static_cast<std::uint64_t>(ebiased) << fw) | frac_field;
}

}  // namespace

BitPattern encode_float(const RecodedFloat& r, const FormatSpec& spec)
{
    require_ieee(spec);
    const int ew = spec.exp_width;
    const int fw = spec.frac_width;
    const std::uint64_t sign_bit = static_cast<std::uint64_t>(r.sign)
                                   << (ew + fw);

    switch (r.cls) {
    case FloatClass::Zero:
        return BitPattern(sign_bit, spec);
    case FloatClass::Inf:
        return BitPattern(sign_bit | (low_mask(ew) << fw), spec);
    case FloatClass::NaN:
        // canonical quiet NaN
        return BitPattern(
            sign_bit | (low_mask(ew) << fw) | (1ULL << (fw - 1)), spec);
    default:
        break;
    }

    BigRat mag(r.sig_num);
    const std::int64_t sc = r.signed_exp - r.sig_bits;
    if (sc >= 0) {
        mag *= BigRat(BigInt(1) << sc);
    } else {
        mag /= BigRat(BigInt(1) << -sc);
    }
    const std::uint64_t body = encode_positive_magnitude(mag, spec);
    return BitPattern(sign_bit | body, spec);
}

BitPattern round_rational_to_float(const BigRat& x, const FormatSpec& spec)
{
    require_ieee(spec);
    if (x == 0) {
        return BitPattern(0, spec);
    }
    const bool neg = x < 0;
    const std::uint64_t body =
        encode_positive_magnitude(neg ? BigRat(-x) : x, spec);
    const std::uint64_t sign_bit =
        neg ? (1ULL << (spec.n - 1)) : 0;
    return BitPattern(sign_bit | body, spec);
}

}  // namespace bposit
