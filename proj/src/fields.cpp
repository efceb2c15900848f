#include "bposit/fields.hpp"

namespace bposit {

std::int64_t effective_scale(const FieldSet& f, const FormatSpec& spec)
{
    const std::int64_t Rp =
        static_cast<std::int64_t>(f.regime) * (1LL << spec.exp_size) +
        static_cast<std::int64_t>(f.exponent);
    return (1 - 2 * f.sign) * (Rp + f.sign);
}

ExactValue fields_to_value(const FieldSet& f, const FormatSpec& spec)
{
    if (f.cls == ValueClass::Zero) {
        return ExactValue::zero();
    }
    if (f.cls == ValueClass::NaR) {
        return ExactValue::nar();
    }
    const std::int64_t T = effective_scale(f, spec);
    const int fb = f.frac_bits;
    // significand 1-3s+f on denominator 2^fb
    BigInt num;
    bool neg = false;
    if (f.sign == 0) {
        num = (BigInt(1) << fb) + f.frac_num;
    } else {
        num = (BigInt(1) << (fb + 1)) - f.frac_num;  // magnitude of f-2
        neg = true;
    }
    return ExactValue::real(neg, num, T - fb);
}

FormatExtremes format_extremes(const FormatSpec& spec)
{
    validate_format(spec);
    if (!spec.is_posit_family()) {
        throw InvalidFormat("extremes are defined for posit-family formats");
    }
    const int n = spec.n;
    const int cap = spec.regime_cap();
    const int es = spec.exp_size;

    // maxpos = 0111...1: run of ones capped at min(cap, n-1).
    FieldSet mx;
    mx.sign = 0;
    {
        const int run = std::min(cap, n - 1);
        mx.regime = run - 1;
        mx.regime_size = run;  // capped or word-end terminated
        const int avail = n - 1 - mx.regime_size;
        const int ebits = std::min(es, avail);
        mx.exponent = ebits > 0
                          ? (((1ULL << ebits) - 1) << (es - ebits))
                          : 0;
        mx.frac_bits = std::max(0, avail - es);
        mx.frac_num = mx.frac_bits > 0 ? ((1ULL << mx.frac_bits) - 1) : 0;
    }

    // minpos = 0...01: run of zeros, capped at cap or terminated by the
    // trailing 1 / word end.
    FieldSet mn;
    mn.sign = 0;
    {
        if (cap <= n - 2) {
            // run of `cap` zeros, the final 1 lands in exponent or fraction
            mn.regime = -cap;
            mn.regime_size = cap;
            const int avail = n - 1 - cap;
            if (avail > es) {
                mn.frac_bits = avail - es;
                mn.frac_num = 1;
                mn.exponent = 0;
            } else {
                mn.exponent = 1ULL << (es - avail);
                mn.frac_bits = 0;
                mn.frac_num = 0;
            }
        } else {
            // standard-style: n-2 zeros then the terminating 1
            mn.regime = -(n - 2);
            mn.regime_size = n - 1;
            mn.exponent = 0;
            mn.frac_bits = 0;
            mn.frac_num = 0;
        }
    }

    FormatExtremes ex;
    ex.minpos = fields_to_value(mn, spec);
    ex.maxpos = fields_to_value(mx, spec);
    ex.log2_floor_minpos = ex.minpos.floor_log2();
    const std::int64_t l2 = ex.maxpos.floor_log2();
    ex.log2_ceil_maxpos = ex.maxpos.significand == 1 ? l2 : l2 + 1;
    return ex;
}

}  // namespace bposit
