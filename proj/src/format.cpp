#include "bposit/format.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <vector>

namespace bposit {

FormatSpec FormatSpec::bposit(int n, int max_regime, int exp_size)
{
    FormatSpec s;
    s.kind = FormatKind::BPosit;
    s.n = n;
    s.max_regime = max_regime;
    s.exp_size = exp_size;
    return validate_format(s);
}

FormatSpec FormatSpec::standard_posit(int n, int exp_size)
{
    FormatSpec s;
    s.kind = FormatKind::StandardPosit;
    s.n = n;
    s.max_regime = n - 1;
    s.exp_size = exp_size;
    return validate_format(s);
}

FormatSpec FormatSpec::ieee(int n)
{
    FormatSpec s;
    s.kind = FormatKind::IeeeBinary;
    s.n = n;
    switch (n) {
    case 16:
        s.exp_width = 5;
        s.frac_width = 10;
        break;
    case 32:
        s.exp_width = 8;
        s.frac_width = 23;
        break;
    case 64:
        s.exp_width = 11;
        s.frac_width = 52;
        break;
    default:
        throw InvalidFormat("ieee width must be 16, 32, or 64");
    }
    return validate_format(s);
}

FormatSpec validate_format(const FormatSpec& spec)
{
    if (spec.n < 4 || spec.n > 64) {
        throw InvalidFormat("bit width must be in [4, 64]");
    }
    if (spec.kind == FormatKind::IeeeBinary) {
        const bool ok = (spec.exp_width == 5 && spec.frac_width == 10) ||
                        (spec.exp_width == 8 && spec.frac_width == 23) ||
                        (spec.exp_width == 11 && spec.frac_width == 52);
        if (!ok || spec.n != 1 + spec.exp_width + spec.frac_width) {
            throw InvalidFormat("unsupported IEEE field widths");
        }
        return spec;
    }
    if (spec.exp_size < 0 || spec.exp_size > 30) {
        throw InvalidFormat("exponent size out of supported range [0, 30]");
    }
    if (spec.max_regime < 2 || spec.max_regime > spec.n - 1) {
        throw InvalidFormat("max regime size must be in [2, n-1]");
    }
    if (spec.kind == FormatKind::StandardPosit &&
        spec.max_regime != spec.n - 1) {
        throw InvalidFormat("standard posit regime cap must equal n-1");
    }
    return spec;
}

int FormatSpec::frac_bits_at(int regime_size) const
{
    if (kind == FormatKind::IeeeBinary) {
        return frac_width;
    }
    return std::max(0, n - 1 - regime_size - exp_size);
}

int FormatSpec::max_frac_bits() const
{
    if (kind == FormatKind::IeeeBinary) {
        return frac_width;
    }
    return frac_bits_at(2);
}

int FormatSpec::regime_size_for(int r) const
{
    const int run = r >= 0 ? r + 1 : -r;
    const int cap = regime_cap();
    if (run > cap || run > n - 1) {
        throw InvalidRegimeValue("regime value out of range for format");
    }
    if (run == cap) {
        return cap;  // run terminated by the cap, no opposite bit
    }
    return std::min(run + 1, n - 1);
}

FormatSpec FormatSpec::parse(const std::string& text)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) {
        parts.push_back(item);
    }
    auto num = [&](const std::string& s) {
        int v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size()) {
            throw InvalidFormat("bad number in format string: " + s);
        }
        return v;
    };
    if (parts.size() == 4 && parts[0] == "bposit") {
        return bposit(num(parts[1]), num(parts[2]), num(parts[3]));
    }
    if (parts.size() == 3 && parts[0] == "posit") {
        return standard_posit(num(parts[1]), num(parts[2]));
    }
    if (parts.size() == 2 && parts[0] == "ieee") {
        return ieee(num(parts[1]));
    }
    throw InvalidFormat("unrecognized format string: " + text);
}

std::string FormatSpec::to_string() const
{
    std::ostringstream os;
    switch (kind) {
    case FormatKind::BPosit:
        os << "bposit:" << n << ':' << max_regime << ':' << exp_size;
        break;
    case FormatKind::StandardPosit:
        os << "posit:" << n << ':' << exp_size;
        break;
    case FormatKind::IeeeBinary:
        os << "ieee:" << n;
        break;
    }
    return os.str();
}

BitPattern::BitPattern(std::uint64_t bits, const FormatSpec& spec)
    : bits(bits), spec(spec)
{
    if (bits != (bits & mask())) {
        throw WidthMismatch("pattern does not fit the format width");
    }
}

std::int64_t BitPattern::as_signed() const
{
    const std::uint64_t sign = 1ULL << (spec.n - 1);
    if (bits & sign) {
        return static_cast<std::int64_t>(bits | ~mask());
    }
    return static_cast<std::int64_t>(bits);
}

std::string BitPattern::to_hex() const
{
    const int digits = (spec.n + 3) / 4;
    std::ostringstream os;
    os << "0x" << std::hex << std::uppercase;
    std::string raw;
    {
        std::ostringstream tmp;
        tmp << std::hex << std::uppercase << bits;
        raw = tmp.str();
    }
    os << std::string(std::max(0, digits - static_cast<int>(raw.size())), '0')
       << raw;
    return os.str();
}

BitPattern BitPattern::from_hex(const std::string& s, const FormatSpec& spec)
{
    std::string body = s;
    if (body.rfind("0x", 0) == 0 || body.rfind("0X", 0) == 0) {
        body = body.substr(2);
    }
    std::uint64_t v = 0;
    auto [p, ec] =
        std::from_chars(body.data(), body.data() + body.size(), v, 16);
    if (ec != std::errc() || p != body.data() + body.size()) {
        throw Error("bad hex pattern: " + s);
    }
    return BitPattern(v, spec);
}

BitPattern BitPattern::parse(const std::string& s, const FormatSpec& spec)
{
    if (s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0) {
        return from_hex(s, spec);
    }
    std::uint64_t v = 0;
    int bits = 0;
    for (const char c : s) {
        if (c == '|' || c == ' ' || c == '_') {
            continue;
        }
        if (c != '0' && c != '1') {
            return from_hex(s, spec);  // bare hex digits
        }
        v = (v << 1) | static_cast<std::uint64_t>(c - '0');
        ++bits;
    }
    if (bits != spec.n) {
        throw WidthMismatch("binary pattern width does not match the format");
    }
    return BitPattern(v, spec);
}

std::strong_ordering compare_as_posit(const BitPattern& a, const BitPattern& b)
{
    if (a.spec != b.spec) {
        throw FormatMismatch("comparing patterns of different formats");
    }
    if (!a.spec.is_posit_family()) {
        throw FormatMismatch("posit ordering requires a posit-family format");
    }
    return a.as_signed() <=> b.as_signed();
}

BitPattern twos_complement(const BitPattern& p)
{
    return BitPattern((~p.bits + 1) & p.mask(), p.spec);
}

}  // namespace bposit
