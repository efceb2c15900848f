#include "bposit/float_codec.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <cstring>

using namespace bposit;

namespace {

const FormatSpec b16 = FormatSpec::ieee(16);
const FormatSpec b32 = FormatSpec::ieee(32);
const FormatSpec b64 = FormatSpec::ieee(64);

std::uint64_t canonical_nan(std::uint64_t bits, const FormatSpec& s)
{
    const std::uint64_t efield =
        (bits >> s.frac_width) & ((1ULL << s.exp_width) - 1);
    const std::uint64_t frac = bits & ((1ULL << s.frac_width) - 1);
    if (efield == (1ULL << s.exp_width) - 1 && frac != 0) {
        return (bits & ~((1ULL << s.frac_width) - 1)) |
               (1ULL << (s.frac_width - 1));
    }
    return bits;
}

}  // namespace

TEST_SUITE_BEGIN("float_codec");

TEST_CASE("decode classifies and recodes hand-checked patterns")
{
    const RecodedFloat one = decode_float(BitPattern(0x3F800000, b32));
    CHECK(one.cls == FloatClass::Normal);
    CHECK(one.to_value() == ExactValue::from_int(1));
    CHECK(recoded_width(b32) == 33);

    const RecodedFloat denorm = decode_float(BitPattern(0x00000001, b32));
    CHECK(denorm.cls == FloatClass::Subnormal);
    CHECK(denorm.signed_exp == -149);
    CHECK(denorm.sig_num == (1ULL << 23));  // normalized to 1.0
    CHECK(denorm.to_value() == ExactValue::pow2(-149));

    CHECK(decode_float(BitPattern(0x7FC00000, b32)).cls == FloatClass::NaN);
    CHECK(decode_float(BitPattern(0x7F800000, b32)).cls == FloatClass::Inf);
    CHECK(decode_float(BitPattern(0x80000000, b32)).cls == FloatClass::Zero);
    CHECK(decode_float(BitPattern(0x80000000, b32)).sign == 1);
}

TEST_CASE("encode inverts decode on hand-checked patterns")
{
    RecodedFloat r;
    r.cls = FloatClass::Subnormal;
    r.sign = 0;
    r.signed_exp = -149;
    r.sig_num = 1ULL << 23;
    r.sig_bits = 23;
    CHECK(encode_float(r, b32).bits == 0x00000001);

    RecodedFloat inf;
    inf.cls = FloatClass::Inf;
    inf.sign = 0;
    CHECK(encode_float(inf, b32).bits == 0x7F800000);
    inf.sign = 1;
    CHECK(encode_float(inf, b32).bits == 0xFF800000);
}

TEST_CASE("exhaustive binary16: value agreement with the bit formula")
{
    for (std::uint64_t p = 0; p < (1ULL << 16); ++p) {
        const RecodedFloat r = decode_float(BitPattern(p, b16));
        const ExactValue direct = testing::float_value_by_formula(p, b16);
        REQUIRE(r.to_value() == direct);
        if (r.cls == FloatClass::Normal || r.cls == FloatClass::Subnormal) {
            // recoded significand normalized into [1,2)
            REQUIRE(r.sig_num >= (1ULL << 10));
            REQUIRE(r.sig_num < (1ULL << 11));
        }
    }
}

TEST_CASE("exhaustive binary16 round-trip with NaN canonicalization")
{
    for (std::uint64_t p = 0; p < (1ULL << 16); ++p) {
        const BitPattern bp(p, b16);
        const BitPattern back = encode_float(decode_float(bp), b16);
        REQUIRE(back.bits == canonical_nan(p, b16));
    }
}

TEST_CASE("rounding matches the hardware float unit on random doubles")
{
    auto rng = testing::seeded_rng(0xF10A7);
    int checked = 0;
    for (int i = 0; i < 40000; ++i) {
        const std::uint64_t bits = rng();
        double d;
        std::memcpy(&d, &bits, 8);
        if (!std::isfinite(d)) {
            continue;
        }
        // exact rational of the double, rounded to binary32 two ways
        const ExactValue ev = testing::float_value_by_formula(bits, b64);
        const float hw = static_cast<float>(d);
        std::uint32_t hw_bits;
        std::memcpy(&hw_bits, &hw, 4);
        std::uint64_t mine;
        if (ev.is_zero()) {
            mine = d == 0.0 && std::signbit(d) ? 0x80000000ULL : 0;
            if (d == 0.0 && std::signbit(d)) {
                continue;  // signed zero is outside the rational map
            }
            mine = 0;
        } else {
            mine = round_rational_to_float(ev.to_rational(), b32).bits;
        }
        REQUIRE(mine == hw_bits);
        ++checked;
    }
    CHECK(checked > 30000);
}

TEST_CASE("binary64 round-trip on random patterns")
{
    const auto words = testing::random_words(64, 200000, 0xD0B1E);
    for (std::uint64_t w : words) {
        const BitPattern bp(w, b64);
        REQUIRE(encode_float(decode_float(bp), b64).bits ==
                canonical_nan(w, b64));
    }
}

TEST_CASE("gradual underflow keeps differences representable")
{
    // in the two lowest binary16 exponent bins the values are k*2^-24;
    // every nonzero difference must survive the encode
    for (std::uint64_t d = 1; d < 2048; ++d) {
        const BigRat diff(d, BigInt(1) << 24);
        const BitPattern enc = round_rational_to_float(diff, b16);
        REQUIRE(enc.bits != 0);
        REQUIRE(decode_float(enc).to_value().to_rational() == diff);
    }
    // and in general x - y == 0 exactly when x == y for random pairs
    auto rng = testing::seeded_rng(0x5AB);
    for (int i = 0; i < 100000; ++i) {
        const std::uint64_t pa = rng() & 0x7FFF;  // positive halfwords
        const std::uint64_t pb = rng() & 0x7FFF;
        const ExactValue va = testing::float_value_by_formula(pa, b16);
        const ExactValue vb = testing::float_value_by_formula(pb, b16);
        if (va.is_nar() || vb.is_nar()) {
            continue;
        }
        const ExactValue diff = sub(va, vb);
        if (diff.is_zero()) {
            REQUIRE(va == vb);
            continue;
        }
        const BitPattern enc =
            round_rational_to_float(diff.to_rational(), b16);
        REQUIRE(enc.bits != 0);
        REQUIRE(enc.bits != 0x8000);
    }
}

TEST_SUITE_END();
