#include "bposit/posit_codec.hpp"

#include "bposit/bposit_codec.hpp"
#include "oracle.hpp"

#include <doctest.h>

using namespace bposit;

namespace {
const FormatSpec p162 = FormatSpec::standard_posit(16, 2);
const FormatSpec b16s = FormatSpec::bposit(16, 15, 2);
}

TEST_SUITE_BEGIN("posit_codec");

TEST_CASE("standard decode on hand-checked patterns")
{
    const FieldSet one = decode_standard(BitPattern(0x4000, p162));
    CHECK(one.sign == 0);
    CHECK(one.regime == 0);
    CHECK(one.exponent == 0);
    CHECK(one.frac_num == 0);
    CHECK(fields_to_value(one, p162) == ExactValue::from_int(1));

    const FieldSet tiny = decode_standard(BitPattern(0x0001, p162));
    CHECK(tiny.regime == -14);
    CHECK(fields_to_value(tiny, p162) == ExactValue::pow2(-56));

    CHECK(decode_standard(BitPattern(0x0000, p162)).cls == ValueClass::Zero);
    CHECK(decode_standard(BitPattern(0x8000, p162)).cls == ValueClass::NaR);
}

TEST_CASE("pi rounds to the eleven-fraction-bit neighbor")
{
    const auto table = testing::ValueTable::build(p162);
    const BigRat pi(BigInt("314159265358979323846264338327950288"),
                    BigInt("100000000000000000000000000000000000"));
    const BitPattern p = table.nearest(pi);
    CHECK(p == round_rational(pi, p162));
    CHECK(p.bits == 0x4C91);
    CHECK(fields_to_value(decode_standard(p), p162).to_rational() ==
          BigRat(31416015625LL, 10000000000LL));
}

TEST_CASE("leading bit counter invariants")
{
    for (std::uint64_t p = 1; p < (1ULL << 16); ++p) {
        const LbcResult r = leading_bit_count(BitPattern(p, p162));
        REQUIRE(r.run_length >= 0);
        REQUIRE(r.run_length <= 15);
    }
    CHECK(leading_bit_count(BitPattern(0x0001, p162)).run_length == 14);
    CHECK(leading_bit_count(BitPattern(0x7FFF, p162)).run_length == 15);
}

TEST_CASE("standard decode equals the capped-regime reference, exhaustive")
{
    for (std::uint64_t p = 0; p < (1ULL << 16); ++p) {
        REQUIRE(decode_standard(BitPattern(p, p162)) ==
                decode_reference(BitPattern(p, b16s)));
    }
}

TEST_CASE("standard encode packs hand-checked fields")
{
    FieldSet f;
    f.sign = 0;
    f.regime = 1;
    f.regime_size = 3;
    f.exponent = 2;
    f.frac_num = 0;
    f.frac_bits = 10;
    CHECK(encode_standard(f, p162).bits == 0x6800);
    CHECK(encode_standard(FieldSet::zero(), p162).bits == 0);
    CHECK(encode_standard(FieldSet::nar(), p162).bits == 0x8000);

    f.exponent = 4;
    CHECK_THROWS_AS(encode_standard(f, p162), FieldOutOfRange);
}

TEST_CASE("rounding oracle over every gap, including the ghost-bit tails")
{
    // standard posits have empty binades near the range edges, which take
    // the decoder-search path instead of the uniform-grid fast path
    const auto table = testing::ValueTable::build(p162);
    for (std::uint64_t p = 1; p + 1 < (1ULL << 15); ++p) {
        const BigRat mid = (table.values[p - 1] + table.values[p]) / 2;
        const BitPattern got = round_rational(mid, p162);
        REQUIRE(got == table.nearest(mid));
        REQUIRE((got.bits & 1) == 0);
        // an off-tie probe in the same gap
        const BigRat probe =
            table.values[p - 1] * BigRat(1, 4) + mid * BigRat(3, 4);
        REQUIRE(round_rational(probe, p162) == table.nearest(probe));
    }
}

TEST_CASE("standard decode-encode is the identity, exhaustive")
{
    for (std::uint64_t p = 0; p < (1ULL << 16); ++p) {
        const BitPattern bp(p, p162);
        REQUIRE(encode_standard(decode_standard(bp), p162) == bp);
    }
    for (const int n : {8, 32}) {
        const FormatSpec s = FormatSpec::standard_posit(n, 2);
        const auto words = testing::random_words(n, 50000, 0x51D + n);
        for (std::uint64_t w : words) {
            const BitPattern bp(w, s);
            REQUIRE(encode_standard(decode_standard(bp), s) == bp);
        }
    }
}

TEST_SUITE_END();
