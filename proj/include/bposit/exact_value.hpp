#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace bposit {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

enum class ValueClass { Zero, NaR, Real };

/// Exact dyadic real used as the ground-truth representation throughout:
/// value = (negative ? -1 : +1) * significand * 2^scale.
/// Canonical form keeps the significand odd, so equality is structural;
/// Zero and NaR carry no numeric payload.
struct ExactValue {
    ValueClass cls = ValueClass::Zero;
    bool negative = false;
    BigInt significand;
    std::int64_t scale = 0;

    static ExactValue zero() { return {}; }
    static ExactValue nar()
    {
        ExactValue v;
        v.cls = ValueClass::NaR;
        return v;
    }
    /// Builds a canonical Real (or Zero when sig == 0).
    static ExactValue real(bool negative, BigInt sig, std::int64_t scale);
    static ExactValue from_int(std::int64_t n);
    /// 2^k
    static ExactValue pow2(std::int64_t k) { return real(false, 1, k); }

    bool is_zero() const { return cls == ValueClass::Zero; }
    bool is_nar() const { return cls == ValueClass::NaR; }
    bool is_real() const { return cls == ValueClass::Real; }

    ExactValue negated() const;
    ExactValue abs() const;
    /// floor(log2 |value|); requires a Real.
    std::int64_t floor_log2() const;

    BigRat to_rational() const;
    double to_double() const;

    /// "17*2^-196" style exact string (sign prefixed when negative).
    std::string to_exact_string() const;
    /// Decimal scientific with the given number of significant digits,
    /// correctly rounded (ties away from zero on the printed digit).
    std::string to_decimal_string(int digits = 12) const;

    bool operator==(const ExactValue&) const = default;
};

ExactValue add(const ExactValue& a, const ExactValue& b);
ExactValue sub(const ExactValue& a, const ExactValue& b);
ExactValue mul(const ExactValue& a, const ExactValue& b);

/// Total order: NaR below everything else, then by numeric value.
/// Mirrors the ordering posits inherit from signed-integer comparison.
int compare(const ExactValue& a, const ExactValue& b);

}  // namespace bposit
