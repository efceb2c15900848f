#include "bposit/exact_value.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace bposit {

namespace {

std::int64_t trailing_zero_bits(const BigInt& v)
{
    return static_cast<std::int64_t>(boost::multiprecision::lsb(v));
}

}  // namespace

ExactValue ExactValue::real(bool negative, BigInt sig, std::int64_t scale)
{
    if (sig < 0) {
        negative = !negative;
        sig = -sig;
    }
    if (sig == 0) {
        return zero();
    }
    const auto tz = trailing_zero_bits(sig);
    ExactValue v;
    v.cls = ValueClass::Real;
    v.negative = negative;
    v.significand = sig >> tz;
    v.scale = scale + tz;
    return v;
}

ExactValue ExactValue::from_int(std::int64_t n)
{
    if (n == 0) {
        return zero();
    }
    const bool neg = n < 0;
    return real(neg, BigInt(neg ? -n : n), 0);
}

ExactValue ExactValue::negated() const
{
    ExactValue v = *this;
    if (v.is_real()) {
        v.negative = !v.negative;
    }
    return v;
}

ExactValue ExactValue::abs() const
{
    ExactValue v = *this;
    if (v.is_real()) {
        v.negative = false;
    }
    return v;
}

std::int64_t ExactValue::floor_log2() const
{
    if (!is_real()) {
        throw std::logic_error("floor_log2 requires a finite nonzero value");
    }
    return static_cast<std::int64_t>(boost::multiprecision::msb(significand)) +
           scale;
}

BigRat ExactValue::to_rational() const
{
    if (is_nar()) {
        throw std::logic_error("NaR has no rational value");
    }
    if (is_zero()) {
        return BigRat(0);
    }
    BigRat r;
    if (scale >= 0) {
        r = BigRat(significand << scale);
    } else {
        r = BigRat(significand, BigInt(1) << -scale);
    }
    return negative ? -r : r;
}

double ExactValue::to_double() const
{
    if (is_nar()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (is_zero()) {
        return 0.0;
    }
    return to_rational().convert_to<double>();
}

std::string ExactValue::to_exact_string() const
{
    if (is_zero()) {
        return "0";
    }
    if (is_nar()) {
        return "NaR";
    }
    std::ostringstream os;
    if (negative) {
        os << '-';
    }
    os << significand << "*2^" << scale;
    return os.str();
}

std::string ExactValue::to_decimal_string(int digits) const
{
    if (is_zero()) {
        return "0";
    }
    if (is_nar()) {
        return "NaR";
    }
    if (digits < 1) {
        digits = 1;
    }

    // Find e10 with 10^e10 <= |v| < 10^(e10+1), starting from the binary
    // magnitude estimate and correcting by comparison.
    const std::int64_t l2 = floor_log2();
    auto e10 = static_cast<std::int64_t>(
        std::floor(static_cast<double>(l2) * 0.30102999566398119));

    auto cmp_pow10 = [&](std::int64_t k) {
        // compare |v| = sig*2^scale against 10^k
        BigInt lhs = significand;
        BigInt rhs = 1;
        std::int64_t s2 = scale;
        if (k >= 0) {
            for (std::int64_t i = 0; i < k; ++i) rhs *= 10;
        } else {
            for (std::int64_t i = 0; i < -k; ++i) lhs *= 10;
        }
        if (s2 >= 0) {
            lhs <<= s2;
        } else {
            rhs <<= -s2;
        }
        return lhs.compare(rhs);
    };
    while (cmp_pow10(e10) < 0) --e10;
    while (cmp_pow10(e10 + 1) >= 0) ++e10;

    // m = round(|v| / 10^(e10 - digits + 1)), ties away from zero.
    const std::int64_t shift10 = e10 - digits + 1;
    BigInt num = significand;
    BigInt den = 1;
    if (scale >= 0) {
        num <<= scale;
    } else {
        den <<= -scale;
    }
    if (shift10 >= 0) {
        for (std::int64_t i = 0; i < shift10; ++i) den *= 10;
    } else {
        for (std::int64_t i = 0; i < -shift10; ++i) num *= 10;
    }
    BigInt q = num / den;
    BigInt rem = num - q * den;
    if (rem * 2 >= den) {
        ++q;
    }
    BigInt bound = 1;
    for (int i = 0; i < digits; ++i) bound *= 10;
    if (q >= bound) {
        q /= 10;
        ++e10;
    }

    std::string ds = q.str();
    std::ostringstream os;
    if (negative) {
        os << '-';
    }
    os << ds[0];
    if (digits > 1) {
        os << '.' << ds.substr(1);
    }
    os << 'e' << e10;
    return os.str();
}

ExactValue add(const ExactValue& a, const ExactValue& b)
{
    if (a.is_nar() || b.is_nar()) {
        return ExactValue::nar();
    }
    if (a.is_zero()) {
        return b;
    }
    if (b.is_zero()) {
        return a;
    }
    const std::int64_t s = std::min(a.scale, b.scale);
    BigInt av = a.significand << (a.scale - s);
    BigInt bv = b.significand << (b.scale - s);
    if (a.negative) av = -av;
    if (b.negative) bv = -bv;
    return ExactValue::real(false, av + bv, s);
}

ExactValue sub(const ExactValue& a, const ExactValue& b)
{
    return add(a, b.negated());
}

ExactValue mul(const ExactValue& a, const ExactValue& b)
{
    if (a.is_nar() || b.is_nar()) {
        return ExactValue::nar();
    }
    if (a.is_zero() || b.is_zero()) {
        return ExactValue::zero();
    }
    return ExactValue::real(a.negative != b.negative,
                            a.significand * b.significand, a.scale + b.scale);
}

int compare(const ExactValue& a, const ExactValue& b)
{
    if (a.is_nar() || b.is_nar()) {
        if (a.is_nar() && b.is_nar()) return 0;
        return a.is_nar() ? -1 : 1;
    }
    const int sa = a.is_zero() ? 0 : (a.negative ? -1 : 1);
    const int sb = b.is_zero() ? 0 : (b.negative ? -1 : 1);
    if (sa != sb) {
        return sa < sb ? -1 : 1;
    }
    if (sa == 0) {
        return 0;
    }
    // same nonzero sign: compare magnitudes
    const std::int64_t s = std::min(a.scale, b.scale);
    const BigInt av = a.significand << (a.scale - s);
    const BigInt bv = b.significand << (b.scale - s);
    const int c = av.compare(bv);
    return sa > 0 ? c : -c;
}

}  // namespace bposit
