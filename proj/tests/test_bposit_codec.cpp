#include "bposit/bposit_codec.hpp"

#include "oracle.hpp"

#include <doctest.h>

using namespace bposit;

namespace {

const FormatSpec f165 = FormatSpec::bposit(16, 6, 5);
const FormatSpec f163 = FormatSpec::bposit(16, 6, 3);
const FormatSpec f16s = FormatSpec::bposit(16, 15, 2);
const FormatSpec f325 = FormatSpec::bposit(32, 6, 5);
const FormatSpec f645 = FormatSpec::bposit(64, 6, 5);

ExactValue value_of(std::uint64_t bits, const FormatSpec& s)
{
    return fields_to_value(decode_reference(BitPattern(bits, s)), s);
}

/// Run-length regime string built the obvious way, as the independent
/// expectation for the table-driven construction.
std::string naive_regime_string(int r, int cap)
{
    const int run = r >= 0 ? r + 1 : -r;
    const char rb = r >= 0 ? '1' : '0';
    std::string s(std::min(run, cap), rb);
    if (run < cap) {
        s.push_back(rb == '1' ? '0' : '1');
    }
    return s;
}

}  // namespace

TEST_SUITE_BEGIN("bposit_codec");

TEST_CASE("reference decode on hand-checked patterns")
{
    CHECK(decode_reference(BitPattern(0x8000, f165)).cls == ValueClass::NaR);
    CHECK(decode_reference(BitPattern(0x0000, f165)).cls == ValueClass::Zero);

    const FieldSet a = decode_reference(BitPattern(0x0400, f165));
    CHECK(a.regime == -4);
    CHECK(a.regime_size == 5);
    CHECK(value_of(0x0400, f165) == ExactValue::pow2(-128));

    const FieldSet b = decode_reference(BitPattern(0x0001, f165));
    CHECK(b.regime == -6);
    CHECK(b.regime_size == 6);
    CHECK(b.exponent == 0);
    CHECK(b.frac_num == 1);
    CHECK(b.frac_bits == 4);
    CHECK(value_of(0x0001, f165).to_rational() ==
          BigRat(17, 16) / BigRat(BigInt(1) << 192));
}

TEST_CASE("regime one-hot priority rows")
{
    // window -> one-hot, for every row of the size-detection table,
    // exercised under both run-bit polarities and wildcard fills
    struct Row {
        const char* window;
        const char* one_hot;
    };
    const Row rows[] = {
        {"1XXXX", "100000"}, {"01XXX", "010000"}, {"001XX", "001000"},
        {"0001X", "000100"}, {"00001", "000010"}, {"00000", "000001"},
    };
    for (const Row& row : rows) {
        for (int run_bit = 0; run_bit <= 1; ++run_bit) {
            for (int fill = 0; fill < 4; ++fill) {
                std::uint64_t word = 0;
                if (run_bit) {
                    word |= 1ULL << 14;
                }
                for (int i = 0; i < 5; ++i) {
                    int bit;
                    if (row.window[i] == 'X') {
                        bit = (fill >> (i & 1)) & 1;
                    } else {
                        bit = row.window[i] - '0';
                    }
                    bit ^= run_bit;  // window is defined after the XOR
                    if (bit) {
                        word |= 1ULL << (13 - i);
                    }
                }
                const OneHotRegime oh =
                    regime_one_hot(BitPattern(word, f165));
                CAPTURE(row.window);
                CHECK(oh.to_string() == row.one_hot);
            }
        }
    }
}

TEST_CASE("regime size from the four-bit regime value")
{
    CHECK(regime_size_of(0b0000) == 2);
    CHECK(regime_size_of(0b1111) == 2);
    CHECK(regime_size_of(0b0001) == 3);
    CHECK(regime_size_of(0b1110) == 3);
    CHECK(regime_size_of(0b0010) == 4);
    CHECK(regime_size_of(0b1101) == 4);
    CHECK(regime_size_of(0b0011) == 5);
    CHECK(regime_size_of(0b1100) == 5);
    CHECK(regime_size_of(0b0100) == 6);
    CHECK(regime_size_of(0b1011) == 6);
    CHECK(regime_size_of(0b0101) == 6);
    CHECK(regime_size_of(0b1010) == 6);
    for (unsigned bad : {0b0110u, 0b0111u, 0b1000u, 0b1001u}) {
        CHECK_THROWS_AS(regime_size_of(bad), InvalidRegimeValue);
    }
}

TEST_CASE("regime string construction rows")
{
    // folded value -> decoder line (one-hot, MSB first across 6 bits)
    CHECK(regime_decoder_line(0, 6) == 0b100000);
    CHECK(regime_decoder_line(1, 6) == 0b010000);
    CHECK(regime_decoder_line(2, 6) == 0b001000);
    CHECK(regime_decoder_line(3, 6) == 0b000100);
    CHECK(regime_decoder_line(4, 6) == 0b000010);
    CHECK(regime_decoder_line(5, 6) == 0b000001);
    CHECK_THROWS_AS(regime_decoder_line(6, 6), InvalidRegimeValue);

    // folded 011: intermediate 0000100 truncated to width 5
    const RegimeString t = regime_string_of(0b0011, 0);
    CHECK(t.width == 5);
    CHECK(t.to_string() == "11110");  // magnitude regime 3, positive word

    const RegimeString u = regime_string_of(0b0101, 0);
    CHECK(u.width == 6);

    // every regime value against the naive run-length construction
    for (int r = -6; r <= 5; ++r) {
        const unsigned r4 = static_cast<unsigned>(r) & 0xF;
        CHECK(regime_string_of(r4, 0).to_string() ==
              naive_regime_string(r, 6));
        // under a negative sign the string encodes the complemented regime
        CHECK(regime_string_of(r4, 1).to_string() ==
              naive_regime_string(~r, 6));
    }
}

TEST_CASE("fast decode equals reference decode, exhaustive 16-bit")
{
    for (const FormatSpec& s : {f165, f163, f16s}) {
        for (std::uint64_t p = 0; p < (1ULL << 16); ++p) {
            const BitPattern bp(p, s);
            const DecodeResult d = decode_fast(bp);
            const FieldSet ref = decode_reference(bp);
            REQUIRE(decode_result_fields(d, s) == ref);
            // deferred-carry invariant
            if (ref.cls == ValueClass::Real) {
                REQUIRE(d.exp_cin ==
                        ((ref.sign == 1 && ref.frac_num == 0) ? 1 : 0));
                // the magnitude path reproduces the decoded value
                const MagnitudeFields m = decode_result_magnitude(d, s);
                const ExactValue v = fields_to_value(ref, s);
                ExactValue mv = fields_to_value(from_magnitude(m, s), s);
                REQUIRE(mv == v);
            }
        }
    }
}

TEST_CASE("fast decode equals reference decode, random wide patterns")
{
    for (const FormatSpec& s : {f325, f645}) {
        const auto words =
            testing::random_words(s.n, 1000000, 0xB0517 + s.n);
        for (std::uint64_t w : words) {
            const BitPattern bp(w, s);
            REQUIRE(decode_result_fields(decode_fast(bp), s) ==
                    decode_reference(bp));
        }
    }
}

TEST_CASE("fast decode exposes the hardware signals")
{
    // -1: all-zero significand defers the +1 into exp_cin
    const DecodeResult d = decode_fast(BitPattern(0xC000, f165));
    CHECK(d.sign == 1);
    CHECK(d.exp_xored == 0b11111);
    CHECK(d.exp_cin == 1);
    const FieldSet f = decode_result_fields(d, f165);
    CHECK(f.exponent == 0);
    CHECK(fields_to_value(f, f165) == ExactValue::from_int(-1));

    const DecodeResult e = decode_fast(BitPattern(0x0001, f165));
    CHECK(e.one_hot.to_string() == "000001");
    CHECK(e.regime_raw == 0b1010);  // -6 in the four-bit regime encoding
}

TEST_CASE("encode packs hand-checked fields")
{
    FieldSet f;
    f.sign = 0;
    f.regime = 3;
    f.regime_size = 5;
    f.exponent = 5;
    f.frac_num = 16;
    f.frac_bits = 5;
    CHECK(encode_fields(f, f165).bits == 0x78B0);
    CHECK(encode_fields(FieldSet::zero(), f165).bits == 0);
    CHECK(encode_fields(FieldSet::nar(), f165).bits == 0x8000);
}

TEST_CASE("encode rejects out-of-range fields")
{
    FieldSet f;  // +2^-192 has no pattern: the all-zero word is Zero
    f.sign = 0;
    f.regime = -6;
    f.regime_size = 6;
    f.exponent = 0;
    f.frac_num = 0;
    f.frac_bits = 4;
    CHECK_THROWS_AS(encode_fields(f, f165), FieldOutOfRange);

    f.frac_num = 1;
    f.frac_bits = 9;  // width inconsistent with the regime
    CHECK_THROWS_AS(encode_fields(f, f165), FieldOutOfRange);

    f.frac_bits = 4;
    f.regime = 9;
    CHECK_THROWS_AS(encode_fields(f, f165), FieldOutOfRange);

    MagnitudeFields m;  // -2^-192 is below -minpos in magnitude terms
    m.sign = 1;
    m.regime = -6;
    m.exponent = 0;
    m.frac_num = 0;
    m.frac_bits = 4;
    CHECK_THROWS_AS(encode_from_magnitude(m, f165), FieldOutOfRange);
}

TEST_CASE("decode-encode is the identity, exhaustive 16-bit")
{
    for (const FormatSpec& s : {f165, f163, f16s}) {
        for (std::uint64_t p = 0; p < (1ULL << 16); ++p) {
            const BitPattern bp(p, s);
            REQUIRE(encode_fields(decode_reference(bp), s) == bp);
        }
    }
}

TEST_CASE("decode-encode is the identity, random wide patterns")
{
    for (const FormatSpec& s : {f325, f645}) {
        const auto words = testing::random_words(s.n, 200000, 0xE2C + s.n);
        for (std::uint64_t w : words) {
            const BitPattern bp(w, s);
            REQUIRE(encode_fields(decode_reference(bp), s) == bp);
        }
    }
}

TEST_CASE("rounding finds the nearest pattern: exhaustive oracle at 16 bits")
{
    const auto table = testing::ValueTable::build(f165);

    // pi lands on the eight-fraction-bit neighbor of 3.140625
    const BigRat pi(BigInt("314159265358979323846264338327950288"),
                    BigInt("100000000000000000000000000000000000"));
    const BitPattern rp = round_rational(pi, f165);
    CHECK(rp.bits == 0x4192);
    CHECK(value_of(rp.bits, f165).to_rational() == BigRat(3140625, 1000000));
    CHECK(table.nearest(pi) == rp);

    // every midpoint must resolve to the even pattern, and negating a tie
    // candidate must land on the complemented pattern (parity preserved)
    for (std::uint64_t p = 1; p + 1 < (1ULL << 15); ++p) {
        const BigRat mid =
            (table.values[p - 1] + table.values[p]) / 2;
        const BitPattern got = round_rational(mid, f165);
        REQUIRE(got == table.nearest(mid));
        REQUIRE((got.bits & 1) == 0);
        REQUIRE(round_rational(-mid, f165) == twos_complement(got));
    }

    // random probes against the brute-force search, both signs
    auto rng = testing::seeded_rng(77);
    for (int i = 0; i < 20000; ++i) {
        const std::int64_t sig =
            static_cast<std::int64_t>(rng() >> 34) - (1LL << 29);
        const int sc = static_cast<int>(rng() % 420) - 210;
        if (sig == 0) continue;
        BigRat x(sig);
        x *= (sc >= 0 ? BigRat(BigInt(1) << sc)
                      : BigRat(1, BigInt(1) << -sc));
        REQUIRE(round_rational(x, f165) == table.nearest(x));
    }
}

TEST_CASE("rounding saturates and never makes Zero or NaR")
{
    const FormatExtremes ex = format_extremes(f325);
    CHECK(round_rational(BigRat(1, BigInt(1) << 300), f325).bits == 1);
    CHECK(round_to_format(ExactValue::pow2(300), f325).bits == 0x7FFFFFFF);
    CHECK(round_to_format(ExactValue::pow2(-300), f325).bits == 1);
    CHECK(round_to_format(ex.minpos, f325).bits == 1);
    CHECK(round_to_format(ExactValue::zero(), f325).bits == 0);
    CHECK(round_to_format(ExactValue::nar(), f325).bits == 0x80000000ULL);
}

TEST_CASE("rounding symmetry and monotonicity on random samples")
{
    auto rng = testing::seeded_rng(91);
    std::vector<BigRat> xs;
    for (int i = 0; i < 4000; ++i) {
        const std::int64_t sig = static_cast<std::int64_t>(rng() >> 30) + 1;
        const int sc = static_cast<int>(rng() % 460) - 230;
        BigRat x(sig);
        x *= (sc >= 0 ? BigRat(BigInt(1) << sc)
                      : BigRat(1, BigInt(1) << -sc));
        xs.push_back(x);
    }
    for (const BigRat& x : xs) {
        const BitPattern p = round_rational(x, f325);
        const BitPattern q = round_rational(-x, f325);
        REQUIRE(q == twos_complement(p));
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t i = 1; i < xs.size(); ++i) {
        REQUIRE(round_rational(xs[i - 1], f325).as_signed() <=
                round_rational(xs[i], f325).as_signed());
    }
}

TEST_CASE("annotated field strings")
{
    CHECK(to_annotated_string(BitPattern(0x0001, f165)) ==
          "0|000000|00000|0001");
    CHECK(to_annotated_string(BitPattern(0x78B0, f165)) ==
          "0|11110|00101|10000");
    CHECK(to_annotated_string(BitPattern(0x4000, f16s)) ==
          "0|10|00|00000000000");

    // patterns parse back from hex and from the annotated form
    for (std::uint64_t p : {0x0001ULL, 0x78B0ULL, 0xC000ULL, 0x8000ULL}) {
        const BitPattern bp(p, f165);
        CHECK(BitPattern::parse(bp.to_hex(), f165) == bp);
        CHECK(BitPattern::parse(to_annotated_string(bp), f165) == bp);
    }
    CHECK_THROWS_AS(BitPattern::parse("0|10", f165), WidthMismatch);
}

TEST_SUITE_END();
