#include "bposit/posit_codec.hpp"

#include <algorithm>
#include <bit>

namespace bposit {

namespace {

void require_standard(const FormatSpec& spec)
{
    if (spec.kind != FormatKind::StandardPosit) {
        throw UnsupportedKindForSpec("operation requires a standard posit format");
    }
}

std::uint64_t low_mask(int bits)
{
    return bits >= 64 ? ~0ULL : ((1ULL << bits) - 1);
}

}  // namespace

LbcResult leading_bit_count(const BitPattern& p)
{
    const int n = p.spec.n;
    LbcResult r;
    r.run_bit = static_cast<int>((p.bits >> (n - 2)) & 1);
    // align the n-1 body bits to the top of a 64-bit word and count
    std::uint64_t w = (p.bits & low_mask(n - 1)) << (64 - (n - 1));
    if (r.run_bit) {
        w = ~w;
    }
    r.run_length = std::min(std::countl_zero(w), n - 1);
    return r;
}

FieldSet decode_standard(const BitPattern& p)
{
    require_standard(p.spec);
    const int n = p.spec.n;
    const int es = p.spec.exp_size;

    const std::uint64_t body = p.bits & low_mask(n - 1);
    if (body == 0) {  // chck: reduction NOR over the body
        return ((p.bits >> (n - 1)) & 1) ? FieldSet::nar() : FieldSet::zero();
    }

    FieldSet f;
    f.sign = static_cast<int>((p.bits >> (n - 1)) & 1);
    const LbcResult lbc = leading_bit_count(p);
    f.regime = lbc.run_bit ? lbc.run_length - 1 : -lbc.run_length;
    f.regime_size = std::min(lbc.run_length + 1, n - 1);

    // shift the regime out; exponent and fraction fall out left-aligned
    const std::uint64_t shifted =
        (body << f.regime_size) & low_mask(n - 1);
    const int window = n - 1;
    if (window >= es) {
        f.exponent = es > 0 ? (shifted >> (window - es)) : 0;
        f.frac_bits = std::max(0, window - f.regime_size - es);
        const int pad = window - es - f.frac_bits;  // ghost zeros below
        f.frac_num = (shifted & low_mask(window - es)) >> pad;
    } else {
        f.exponent = shifted << (es - window);
        f.frac_bits = 0;
        f.frac_num = 0;
    }
    return f;
}

BitPattern encode_standard(const FieldSet& f, const FormatSpec& spec)
{
    require_standard(spec);
    const int n = spec.n;
    const int es = spec.exp_size;
    if (f.cls == ValueClass::Zero) {
        return BitPattern(0, spec);
    }
    if (f.cls == ValueClass::NaR) {
        return BitPattern(1ULL << (n - 1), spec);
    }
    if (f.regime < -(n - 1) || f.regime > n - 2) {
        throw FieldOutOfRange("regime value out of range");
    }
    if (es < 64 && f.exponent >= (1ULL << es)) {
        throw FieldOutOfRange("exponent out of range");
    }

    const int size = spec.regime_size_for(f.regime);
    const int avail = n - 1 - size;
    const int ebits = std::min(es, avail);
    const int fb = std::max(0, avail - es);
    if (f.frac_bits != fb || (fb < 64 && f.frac_num >= (1ULL << fb))) {
        throw FieldOutOfRange("fraction inconsistent with the regime width");
    }
    if (es > ebits && (f.exponent & low_mask(es - ebits)) != 0) {
        throw FieldOutOfRange("exponent has bits past the word end");
    }

    // regime string: run of run_bit then the opposite bit if it fits
    const int run = f.regime >= 0 ? f.regime + 1 : -f.regime;
    const int run_bit = f.regime >= 0 ? 1 : 0;
    std::uint64_t str = run_bit ? low_mask(run) << (size - run) : 0;
    if (size > run) {
        if (!run_bit) {
            str |= 1ULL << (size - run - 1);
        }
        // run_bit==1 leaves the terminator 0 already in place
    }

    std::uint64_t word = static_cast<std::uint64_t>(f.sign) << (n - 1);
    word |= str << (n - 1 - size);
    if (ebits > 0) {
        word |= (f.exponent >> (es - ebits)) << (avail - ebits);
    }
    if (fb > 0) {
        word |= f.frac_num;
    }
    return BitPattern(word, spec);
}

}  // namespace bposit
