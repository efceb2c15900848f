#include "bposit/bposit_codec.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace bposit {

namespace {

void require_posit(const FormatSpec& spec)
{
    if (!spec.is_posit_family()) {
        throw UnsupportedKindForSpec("operation requires a posit-family format");
    }
}

std::uint64_t low_mask(int bits)
{
    return bits >= 64 ? ~0ULL : ((1ULL << bits) - 1);
}

/// Width of the signed regime-value field for a given cap.
int regime_value_width(int cap)
{
    return std::bit_width(static_cast<unsigned>(cap - 1)) + 1;
}

int sign_extend(std::uint32_t v, int width)
{
    const std::uint32_t sign = 1U << (width - 1);
    return static_cast<int>((v ^ sign)) - static_cast<int>(sign);
}

struct RunScan {
    int run = 0;      // identical leading bits, capped
    int run_bit = 0;  // the repeated bit value
    int regime_size = 0;
};

RunScan scan_regime(std::uint64_t bits, int n, int cap)
{
    RunScan rs;
    rs.run_bit = static_cast<int>((bits >> (n - 2)) & 1);
    int run = 0;
    for (int i = n - 2; i >= 0 && run < cap; --i) {
        if (static_cast<int>((bits >> i) & 1) != rs.run_bit) {
            break;
        }
        ++run;
    }
    rs.run = run;
    if (run == cap) {
        rs.regime_size = cap;
    } else if (run == n - 1) {
        rs.regime_size = n - 1;  // run reaches the LSB, ghost bit terminates
    } else {
        rs.regime_size = run + 1;
    }
    return rs;
}

}  // namespace

int OneHotRegime::index() const
{
    return std::countr_zero(bits);
}

std::string OneHotRegime::to_string() const
{
    std::string s(width, '0');
    for (int i = 0; i < width; ++i) {
        if ((bits >> i) & 1) {
            s[i] = '1';
        }
    }
    return s;
}

std::string RegimeString::to_string() const
{
    std::string s(width, '0');
    for (int i = 0; i < width; ++i) {
        if ((bits >> (width - 1 - i)) & 1) {
            s[i] = '1';
        }
    }
    return s;
}

FieldSet decode_reference(const BitPattern& p)
{
    require_posit(p.spec);
    const int n = p.spec.n;
    const int cap = p.spec.regime_cap();
    const int es = p.spec.exp_size;

    if (p.bits == 0) {
        return FieldSet::zero();
    }
    if (p.bits == (1ULL << (n - 1))) {
        return FieldSet::nar();
    }

    FieldSet f;
    f.sign = static_cast<int>((p.bits >> (n - 1)) & 1);
    const RunScan rs = scan_regime(p.bits, n, cap);
    f.regime = rs.run_bit ? rs.run - 1 : -rs.run;
    f.regime_size = rs.regime_size;

    const int avail = n - 1 - rs.regime_size;
    const std::uint64_t rem = p.bits & low_mask(avail);
    if (avail >= es) {
        f.exponent = es > 0 ? (rem >> (avail - es)) : 0;
        f.frac_bits = avail - es;
        f.frac_num = rem & low_mask(f.frac_bits);
    } else {
        f.exponent = rem << (es - avail);
        f.frac_bits = 0;
        f.frac_num = 0;
    }
    return f;
}

OneHotRegime regime_one_hot(const BitPattern& p)
{
    require_posit(p.spec);
    const int n = p.spec.n;
    const int cap = p.spec.regime_cap();
    const int run_bit = static_cast<int>((p.bits >> (n - 2)) & 1);

    OneHotRegime oh;
    oh.width = cap;
    int idx = cap - 1;
    for (int i = 0; i < cap - 1; ++i) {
        const int pos = n - 3 - i;
        const int bit =
            pos >= 0 ? static_cast<int>((p.bits >> pos) & 1) : 0;
        if ((bit ^ run_bit) == 1) {
            idx = i;
            break;
        }
    }
    oh.bits = 1ULL << idx;
    return oh;
}

DecodeResult decode_fast(const BitPattern& p)
{
    require_posit(p.spec);
    const int n = p.spec.n;
    const int cap = p.spec.regime_cap();
    const int es = p.spec.exp_size;
    const int rw = regime_value_width(cap);
    const int mux_width = n - 3;

    DecodeResult d;
    d.sign = static_cast<int>((p.bits >> (n - 1)) & 1);
    const std::uint64_t body = p.bits & low_mask(n - 1);
    if (body == 0) {
        d.cls = d.sign ? ValueClass::NaR : ValueClass::Zero;
    }

    d.one_hot = regime_one_hot(p);
    const int idx = d.one_hot.index();
    const int run_bit = static_cast<int>((p.bits >> (n - 2)) & 1);

    // priority-encoded index, folded by the run bit into the signed value
    d.regime_raw_width = rw;
    d.regime_raw = static_cast<std::uint32_t>(idx);
    if (!run_bit) {
        d.regime_raw ^= static_cast<std::uint32_t>(low_mask(rw));
    }
    d.regime_raw &= static_cast<std::uint32_t>(low_mask(rw));

    // field mux: tap the word below sign+regime, ghost-padded at the LSB
    const int size = std::min(idx + 2, cap);
    const int tap_width = n - 1 - size;
    const std::uint64_t tap = (p.bits & low_mask(tap_width))
                              << (mux_width - tap_width);

    std::uint64_t exp_raw;
    if (mux_width >= es) {
        exp_raw = es > 0 ? (tap >> (mux_width - es)) : 0;
        d.frac_width = mux_width - es;
        d.frac_raw = tap & low_mask(d.frac_width);
    } else {
        exp_raw = tap << (es - mux_width);
        d.frac_width = 0;
        d.frac_raw = 0;
    }
    d.exp_xored = exp_raw ^ (d.sign ? low_mask(es) : 0);
    d.exp_cin = (d.sign && d.frac_raw == 0) ? 1 : 0;
    return d;
}

FieldSet decode_result_fields(const DecodeResult& d, const FormatSpec& spec)
{
    if (d.cls == ValueClass::Zero) {
        return FieldSet::zero();
    }
    if (d.cls == ValueClass::NaR) {
        return FieldSet::nar();
    }
    const int n = spec.n;
    const int cap = spec.regime_cap();
    const int es = spec.exp_size;

    FieldSet f;
    f.sign = d.sign;
    f.regime = sign_extend(d.regime_raw, d.regime_raw_width);
    const int idx = d.one_hot.index();
    const int size = std::min(idx + 2, cap);
    // a sub-cap run that hits the word end occupies only n-1 bits
    f.regime_size = std::min(size, n - 1);
    f.exponent = d.exp_xored ^ (d.sign ? low_mask(es) : 0);
    f.frac_bits = std::max(0, n - 1 - f.regime_size - es);
    f.frac_num =
        f.frac_bits > 0 ? (d.frac_raw >> (d.frac_width - f.frac_bits)) : 0;
    return f;
}

MagnitudeFields decode_result_magnitude(const DecodeResult& d,
                                        const FormatSpec& spec)
{
    return to_magnitude(decode_result_fields(d, spec), spec);
}

MagnitudeFields to_magnitude(const FieldSet& raw, const FormatSpec& spec)
{
    MagnitudeFields m;
    m.cls = raw.cls;
    if (raw.cls != ValueClass::Real) {
        return m;
    }
    m.sign = raw.sign;
    if (raw.sign == 0) {
        m.regime = raw.regime;
        m.exponent = raw.exponent;
        m.frac_num = raw.frac_num;
        m.frac_bits = raw.frac_bits;
        return m;
    }
    const int es = spec.exp_size;
    const std::int64_t Rp =
        static_cast<std::int64_t>(raw.regime) * (1LL << es) +
        static_cast<std::int64_t>(raw.exponent);
    const int cin = raw.frac_num == 0 ? 1 : 0;
    const std::int64_t Rm = -(Rp + 1) + cin;
    const std::int64_t e = Rm - ((Rm >> es) << es);  // floor-mod 2^es
    m.regime = static_cast<int>((Rm - e) >> es);
    m.exponent = static_cast<std::uint64_t>(e);
    // the deferred carry can change the regime, and with it the natural
    // fraction width; the fraction is zero exactly in those cases
    m.frac_bits = spec.frac_bits_at(spec.regime_size_for(m.regime));
    m.frac_num = raw.frac_num == 0
                     ? 0
                     : ((1ULL << raw.frac_bits) - raw.frac_num);
    return m;
}

FieldSet from_magnitude(const MagnitudeFields& m, const FormatSpec& spec)
{
    if (m.cls == ValueClass::Zero) {
        return FieldSet::zero();
    }
    if (m.cls == ValueClass::NaR) {
        return FieldSet::nar();
    }
    FieldSet f;
    f.sign = m.sign;
    if (m.sign == 0) {
        f.regime = m.regime;
        f.exponent = m.exponent;
        f.frac_num = m.frac_num;
        f.frac_bits = m.frac_bits;
    } else {
        const int es = spec.exp_size;
        const std::int64_t Rm =
            static_cast<std::int64_t>(m.regime) * (1LL << es) +
            static_cast<std::int64_t>(m.exponent);
        const int cin = m.frac_num == 0 ? 1 : 0;
        const std::int64_t Rp = -(Rm + 1) + cin;
        const std::int64_t e = Rp - ((Rp >> es) << es);
        f.regime = static_cast<int>((Rp - e) >> es);
        f.exponent = static_cast<std::uint64_t>(e);
        f.frac_bits = spec.frac_bits_at(spec.regime_size_for(f.regime));
        f.frac_num =
            m.frac_num == 0 ? 0 : ((1ULL << m.frac_bits) - m.frac_num);
    }
    f.regime_size = spec.regime_size_for(f.regime);
    return f;
}

int regime_size_of(unsigned regime4)
{
    return regime_size_of_general(regime4, 4, 6);
}

int regime_size_of_general(unsigned regime_bits, int width, int cap)
{
    const unsigned msb = (regime_bits >> (width - 1)) & 1;
    const unsigned low = regime_bits & static_cast<unsigned>(low_mask(width - 1));
    const unsigned folded =
        low ^ (msb ? static_cast<unsigned>(low_mask(width - 1)) : 0);
    if (folded > static_cast<unsigned>(cap - 1)) {
        throw InvalidRegimeValue("regime value outside the representable run sizes");
    }
    return std::min(static_cast<int>(folded) + 2, cap);
}

std::uint32_t regime_decoder_line(unsigned folded, int cap)
{
    if (folded > static_cast<unsigned>(cap - 1)) {
        throw InvalidRegimeValue("folded regime out of decoder range");
    }
    return 1U << (cap - 1 - folded);
}

RegimeString regime_string_of(unsigned regime4, int sign)
{
    return regime_string_of_general(regime4, 4, sign, 6);
}

RegimeString regime_string_of_general(unsigned regime_bits, int width,
                                      int sign, int cap)
{
    const unsigned msb = (regime_bits >> (width - 1)) & 1;
    const unsigned low = regime_bits & static_cast<unsigned>(low_mask(width - 1));
    const unsigned folded =
        low ^ (msb ? static_cast<unsigned>(low_mask(width - 1)) : 0);
    const int size = regime_size_of_general(regime_bits, width, cap);

    // decoder line, prepended with a 0, truncated to the regime width
    const std::uint32_t line = regime_decoder_line(folded, cap);
    const std::uint32_t intermediate = line;  // cap+1 bits with MSB 0
    std::uint32_t str = intermediate >> (cap + 1 - size);

    // a run of the regime-MSB bit value, so invert unless msb^sign is set
    const unsigned mask_bit = 1U ^ (msb ^ static_cast<unsigned>(sign));
    if (mask_bit) {
        str ^= static_cast<std::uint32_t>(low_mask(size));
    }
    return RegimeString{str, size};
}

BitPattern encode_from_magnitude(const MagnitudeFields& m,
                                 const FormatSpec& spec)
{
    require_posit(spec);
    const int n = spec.n;
    if (m.cls == ValueClass::Zero) {
        return BitPattern(0, spec);
    }
    if (m.cls == ValueClass::NaR) {
        return BitPattern(1ULL << (n - 1), spec);
    }

    const int cap = spec.regime_cap();
    const int es = spec.exp_size;
    const int rw = regime_value_width(cap);

    if (m.regime < -cap || m.regime >= cap) {
        throw FieldOutOfRange("regime value out of range");
    }
    if (m.exponent >= (1ULL << es)) {
        throw FieldOutOfRange("exponent out of range");
    }
    const int nat_size = spec.regime_size_for(m.regime);
    const int nat_fb = spec.frac_bits_at(nat_size);
    if (m.frac_bits != nat_fb || (nat_fb < 64 && m.frac_num >= (1ULL << nat_fb))) {
        throw FieldOutOfRange("fraction inconsistent with the regime width");
    }
    {
        const int ebits = std::min(es, n - 1 - nat_size);
        if (es > ebits && (m.exponent & low_mask(es - ebits)) != 0) {
            throw FieldOutOfRange("exponent has bits past the word end");
        }
    }

    const int s = m.sign;
    // significand to signed form, deferred-carry flag
    const std::uint64_t frac_signed =
        (s && m.frac_num != 0) ? ((1ULL << m.frac_bits) - m.frac_num)
                               : m.frac_num;
    const bool frac_zero = frac_signed == 0;

    // regime and exponent through the sign XOR
    const std::uint32_t ones_rw = static_cast<std::uint32_t>(low_mask(rw));
    const std::uint64_t ones_es = low_mask(es);
    std::uint32_t r_hat =
        static_cast<std::uint32_t>(m.regime) & ones_rw;
    if (s) {
        r_hat ^= ones_rw;
    }
    std::uint64_t e1 = m.exponent ^ (s ? ones_es : 0);
    const int cin = (s && frac_zero) ? 1 : 0;
    std::uint64_t e_sum = e1 + cin;
    const bool ovf = es < 64 && (e_sum >> es) != 0;
    const std::uint64_t e_out = e_sum & ones_es;
    const std::uint32_t r_final = (r_hat + (ovf ? 1 : 0)) & ones_rw;

    RegimeString str;
    try {
        str = regime_string_of_general(r_final, rw, 0, cap);
    } catch (const InvalidRegimeValue&) {
        throw FieldOutOfRange("value has no encoding in this format");
    }
    const int size = str.width;

    // pack through the width mux
    const int avail = n - 1 - size;
    const int ebits = std::min(es, avail);
    const int fb = std::max(0, avail - es);

    std::uint64_t word = static_cast<std::uint64_t>(s) << (n - 1);
    word |= static_cast<std::uint64_t>(str.bits) << (n - 1 - size);
    if (ebits > 0) {
        word |= (e_out >> (es - ebits)) << (avail - ebits);
    }
    if (fb > 0) {
        // frac_signed is at the natural width; align to the packed width
        std::uint64_t fr = frac_signed;
        if (m.frac_bits > fb) {
            fr >>= (m.frac_bits - fb);
        } else if (fb > m.frac_bits) {
            fr <<= (fb - m.frac_bits);
        }
        word |= fr;
    }
    if ((word & low_mask(n - 1)) == 0) {
        // the assembled body collides with the Zero/NaR encodings, so the
        // requested value (an exact 2^(+-rS*2^eS)) has no pattern
        throw FieldOutOfRange("value has no encoding in this format");
    }
    return BitPattern(word, spec);
}

BitPattern encode_fields(const FieldSet& f, const FormatSpec& spec)
{
    require_posit(spec);
    if (f.cls == ValueClass::Zero) {
        return BitPattern(0, spec);
    }
    if (f.cls == ValueClass::NaR) {
        return BitPattern(1ULL << (spec.n - 1), spec);
    }
    const int cap = spec.regime_cap();
    if (f.regime < -cap || f.regime >= cap) {
        throw FieldOutOfRange("regime value out of range");
    }
    if (f.regime_size != 0 && f.regime_size != spec.regime_size_for(f.regime)) {
        throw FieldOutOfRange("regime size inconsistent with regime value");
    }
    try {
        return encode_from_magnitude(to_magnitude(f, spec), spec);
    } catch (const InvalidRegimeValue&) {
        throw FieldOutOfRange("fields denote a value with no encoding");
    }
}

namespace {

ExactValue pattern_value(std::uint64_t bits, const FormatSpec& spec)
{
    return fields_to_value(decode_reference(BitPattern(bits, spec)), spec);
}

/// sig*2^scale versus num/den, all positive; avoids rational
/// normalization on the hot rounding path.
int cmp_scaled(const BigInt& sig, std::int64_t scale, const BigInt& num,
               const BigInt& den)
{
    BigInt lhs = sig * den;
    BigInt rhs = num;
    if (scale >= 0) {
        lhs <<= scale;
    } else {
        rhs <<= -scale;
    }
    return lhs.compare(rhs);
}

int cmp_value_rat(const ExactValue& v, const BigInt& num, const BigInt& den)
{
    return cmp_scaled(v.significand, v.scale, num, den);
}

/// Picks between the straddling patterns lo and lo+1 for positive
/// num/den, ties to the even pattern.
std::uint64_t pick_nearest(std::uint64_t lo, const ExactValue& v_lo,
                           const ExactValue& v_hi, const BigInt& num,
                           const BigInt& den)
{
    const ExactValue sum = add(v_lo, v_hi);
    const int c = cmp_value_rat(sum, num * 2, den);
    if (c > 0) {
        return lo;  // midpoint above x: x nearer the lower value
    }
    if (c < 0) {
        return lo + 1;
    }
    return (lo & 1) == 0 ? lo : lo + 1;
}

}  // namespace

BitPattern round_rational(const BigRat& x, const FormatSpec& spec)
{
    require_posit(spec);
    validate_format(spec);
    const int n = spec.n;
    const int cap = spec.regime_cap();
    const int es = spec.exp_size;
    if (x == 0) {
        return BitPattern(0, spec);
    }
    const bool neg = x < 0;
    BigInt num = boost::multiprecision::numerator(x);
    if (neg) {
        num = -num;
    }
    const BigInt den = boost::multiprecision::denominator(x);

    const std::uint64_t maxpat = low_mask(n - 1);
    const FormatExtremes ex = format_extremes(spec);

    std::uint64_t chosen = 0;
    if (cmp_value_rat(ex.minpos, num, den) >= 0) {
        chosen = 1;  // saturate toward minpos, never to zero
    } else if (cmp_value_rat(ex.maxpos, num, den) <= 0) {
        chosen = maxpat;
    } else {
        // floor(log2 x)
        std::int64_t T =
            static_cast<std::int64_t>(boost::multiprecision::msb(num)) -
            static_cast<std::int64_t>(boost::multiprecision::msb(den));
        if (cmp_scaled(1, T, num, den) > 0) {
            --T;
        }

        // when the binade's fields are fully stored, the values form a
        // uniform grid and one division lands on the floor pattern
        const std::int64_t r64 = T >> es;
        bool fast = r64 >= -cap && r64 < cap;
        int size = 0, ebits = 0, fb = 0;
        std::uint64_t e = 0;
        if (fast) {
            const int r = static_cast<int>(r64);
            size = spec.regime_size_for(r);
            const int avail = n - 1 - size;
            ebits = std::min(es, avail);
            fb = std::max(0, avail - es);
            e = static_cast<std::uint64_t>(T - (r64 << es));
            if (ebits < es && (e & low_mask(es - ebits)) != 0) {
                fast = false;  // the exponent needs ghost bits: empty binade
            }
        }

        if (fast) {
            const std::int64_t sh = T - fb;
            BigInt divd = num;
            BigInt divr = den;
            if (sh >= 0) {
                divr <<= sh;
            } else {
                divd <<= -sh;
            }
            const BigInt m = divd / divr;  // in [2^fb, 2^(fb+1))
            const std::uint64_t k =
                m.convert_to<std::uint64_t>() - (1ULL << fb);

            FieldSet base;
            base.sign = 0;
            base.regime = static_cast<int>(r64);
            base.regime_size = size;
            base.exponent = e;
            base.frac_num = 0;
            base.frac_bits = fb;
            std::uint64_t p0;
            try {
                p0 = encode_fields(base, spec).bits;
            } catch (const FieldOutOfRange&) {
                p0 = 0;  // the exact 2^-I slot below minpos
            }
            const std::uint64_t lo = p0 + k;
            const ExactValue v_lo = ExactValue::real(false, m, sh);
            const ExactValue v_hi = pattern_value(lo + 1, spec);
            chosen = pick_nearest(lo, v_lo, v_hi, num, den);
        } else {
            std::uint64_t lo = 1, hi = maxpat;
            while (lo < hi) {  // largest pattern with value <= x
                const std::uint64_t mid = lo + (hi - lo + 1) / 2;
                if (cmp_value_rat(pattern_value(mid, spec), num, den) <= 0) {
                    lo = mid;
                } else {
                    hi = mid - 1;
                }
            }
            chosen = pick_nearest(lo, pattern_value(lo, spec),
                                  pattern_value(lo + 1, spec), num, den);
        }
    }

    if (neg) {
        return twos_complement(BitPattern(chosen, spec));
    }
    return BitPattern(chosen, spec);
}

BitPattern round_to_format(const ExactValue& x, const FormatSpec& spec)
{
    require_posit(spec);
    if (x.is_nar()) {
        return BitPattern(1ULL << (spec.n - 1), spec);
    }
    if (x.is_zero()) {
        return BitPattern(0, spec);
    }
    return round_rational(x.to_rational(), spec);
}

std::string to_annotated_string(const BitPattern& p)
{
    const FieldSet f = decode_reference(p);
    const int n = p.spec.n;
    std::ostringstream os;
    os << ((p.bits >> (n - 1)) & 1);
    auto emit = [&](int hi, int lo) {
        os << '|';
        for (int i = hi; i >= lo; --i) {
            os << ((p.bits >> i) & 1);
        }
    };
    if (f.cls != ValueClass::Real) {
        if (n >= 2) {
            emit(n - 2, 0);
        }
        return os.str();
    }
    const int avail = n - 1 - f.regime_size;
    const int ebits = std::min(p.spec.exp_size, avail);
    emit(n - 2, n - 1 - f.regime_size);
    if (ebits > 0) {
        emit(avail - 1, avail - ebits);
    } else {
        os << '|';
    }
    if (avail - ebits > 0) {
        emit(avail - ebits - 1, 0);
    } else {
        os << '|';
    }
    return os.str();
}

}  // namespace bposit
