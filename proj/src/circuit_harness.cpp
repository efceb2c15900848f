#include "bposit/bposit_codec.hpp"
#include "bposit/circuits.hpp"
#include "bposit/float_codec.hpp"
#include "bposit/posit_codec.hpp"

#include <bit>

namespace bposit {

namespace {

std::uint64_t low_mask(int bits)
{
    return bits >= 64 ? ~0ULL : ((1ULL << bits) - 1);
}

int regime_width(const FormatSpec& spec)
{
    return std::bit_width(static_cast<unsigned>(spec.regime_cap() - 1)) + 1;
}

}  // namespace

std::vector<std::uint64_t> circuit_model_inputs(CircuitKind kind,
                                                const FormatSpec& spec,
                                                std::uint64_t word)
{
    const BitPattern p(word, spec);
    switch (kind) {
    case CircuitKind::BPositDecoder:
    case CircuitKind::PositDecoder:
    case CircuitKind::FloatDecoder:
        return {word};
    case CircuitKind::BPositEncoder: {
        const FieldSet raw = decode_reference(p);
        const int rw = regime_width(spec);
        const int fw = std::max(0, spec.n - 3 - spec.exp_size);
        if (raw.cls != ValueClass::Real) {
            return {0, 0, 0, 0, 1,
                    raw.cls == ValueClass::Zero ? 1ULL : 0ULL,
                    raw.cls == ValueClass::NaR ? 1ULL : 0ULL};
        }
        const MagnitudeFields m = to_magnitude(raw, spec);
        const std::uint64_t frac_signed =
            raw.frac_bits > 0 ? raw.frac_num << (fw - raw.frac_bits) : 0;
        return {static_cast<std::uint64_t>(m.sign),
                static_cast<std::uint64_t>(m.regime) & low_mask(rw),
                m.exponent,
                frac_signed,
                frac_signed == 0 ? 1ULL : 0ULL,
                0,
                0};
    }
    case CircuitKind::PositEncoder: {
        const FieldSet raw = decode_standard(p);
        const int rw = regime_width(spec);
        const int fw = std::max(0, spec.n - 3 - spec.exp_size);
        if (raw.cls != ValueClass::Real) {
            return {0, 0, 0, 0,
                    raw.cls == ValueClass::Zero ? 1ULL : 0ULL,
                    raw.cls == ValueClass::NaR ? 1ULL : 0ULL};
        }
        const std::uint64_t frac_aligned =
            raw.frac_bits > 0 ? raw.frac_num << (fw - raw.frac_bits) : 0;
        return {static_cast<std::uint64_t>(raw.sign),
                static_cast<std::uint64_t>(raw.regime) & low_mask(rw),
                raw.exponent,
                frac_aligned,
                0,
                0};
    }
    case CircuitKind::FloatEncoder: {
        const RecodedFloat r = decode_float(p);
        return {static_cast<std::uint64_t>(r.sign),
                static_cast<std::uint64_t>(r.signed_exp) &
                    low_mask(spec.exp_width + 1),
                r.sig_num,
                r.cls == FloatClass::Zero ? 1ULL : 0ULL,
                r.cls == FloatClass::Inf ? 1ULL : 0ULL,
                r.cls == FloatClass::NaN ? 1ULL : 0ULL};
    }
    }
    throw UnsupportedKindForSpec("unknown circuit kind");
}

std::vector<std::uint64_t> circuit_model_outputs(CircuitKind kind,
                                                 const FormatSpec& spec,
                                                 std::uint64_t word)
{
    const BitPattern p(word, spec);
    switch (kind) {
    case CircuitKind::BPositDecoder: {
        const DecodeResult d = decode_fast(p);
        return {d.cls == ValueClass::Zero ? 1ULL : 0ULL,
                d.cls == ValueClass::NaR ? 1ULL : 0ULL,
                static_cast<std::uint64_t>(d.sign),
                d.regime_raw,
                d.exp_xored,
                d.frac_raw,
                static_cast<std::uint64_t>(d.exp_cin)};
    }
    case CircuitKind::PositDecoder: {
        const FieldSet f = decode_standard(p);
        const int rw = regime_width(spec);
        const int fw = std::max(0, spec.n - 3 - spec.exp_size);
        if (f.cls != ValueClass::Real) {
            return {f.cls == ValueClass::Zero ? 1ULL : 0ULL,
                    f.cls == ValueClass::NaR ? 1ULL : 0ULL,
                    0, 0, 0, 0};
        }
        const std::uint64_t frac_aligned =
            f.frac_bits > 0 ? f.frac_num << (fw - f.frac_bits) : 0;
        return {0, 0,
                static_cast<std::uint64_t>(f.sign),
                static_cast<std::uint64_t>(f.regime) & low_mask(rw),
                f.exponent,
                frac_aligned};
    }
    case CircuitKind::FloatDecoder: {
        const RecodedFloat r = decode_float(p);
        return {r.cls == FloatClass::Zero ? 1ULL : 0ULL,
                r.cls == FloatClass::Subnormal ? 1ULL : 0ULL,
                r.cls == FloatClass::Inf ? 1ULL : 0ULL,
                r.cls == FloatClass::NaN ? 1ULL : 0ULL,
                static_cast<std::uint64_t>(r.sign),
                static_cast<std::uint64_t>(r.signed_exp) &
                    low_mask(spec.exp_width + 1),
                r.sig_num};
    }
    case CircuitKind::BPositEncoder:
    case CircuitKind::PositEncoder:
        return {word};
    case CircuitKind::FloatEncoder:
        // the netlist canonicalizes NaN payloads on repack
        return {encode_float(decode_float(p), spec).bits};
    }
    throw UnsupportedKindForSpec("unknown circuit kind");
}

std::size_t circuit_mismatches(const Netlist& nl, CircuitKind kind,
                               const FormatSpec& spec,
                               const std::vector<std::uint64_t>& words)
{
    std::size_t bad = 0;
    const std::size_t total = words.size();
    std::vector<std::uint64_t> in_lanes(nl.num_inputs);
    std::size_t out_bits = 0;
    for (const Bus& b : nl.output_buses) {
        out_bits += b.bits.size();
    }
    std::vector<std::uint64_t> exp_lanes(out_bits);

    for (std::size_t base = 0; base < total; base += 64) {
        const int lanes = static_cast<int>(std::min<std::size_t>(64, total - base));
        std::fill(in_lanes.begin(), in_lanes.end(), 0);
        std::fill(exp_lanes.begin(), exp_lanes.end(), 0);
        for (int l = 0; l < lanes; ++l) {
            const std::uint64_t w = words[base + l];
            const auto ins = circuit_model_inputs(kind, spec, w);
            const auto outs = circuit_model_outputs(kind, spec, w);
            std::size_t bit = 0;
            for (std::size_t bi = 0; bi < nl.input_buses.size(); ++bi) {
                for (std::size_t i = 0; i < nl.input_buses[bi].bits.size();
                     ++i) {
                    if ((ins[bi] >> i) & 1) {
                        in_lanes[nl.input_buses[bi].bits[i]] |= 1ULL << l;
                    }
                }
            }
            for (std::size_t bo = 0; bo < nl.output_buses.size(); ++bo) {
                for (std::size_t i = 0; i < nl.output_buses[bo].bits.size();
                     ++i, ++bit) {
                    if ((outs[bo] >> i) & 1) {
                        exp_lanes[bit] |= 1ULL << l;
                    }
                }
            }
        }
        const auto got = simulate_batch(nl, in_lanes);
        std::uint64_t diff = 0;
        for (std::size_t i = 0; i < out_bits; ++i) {
            diff |= got[i] ^ exp_lanes[i];
        }
        if (lanes < 64) {
            diff &= (1ULL << lanes) - 1;
        }
        bad += std::popcount(diff);
    }
    return bad;
}

}  // namespace bposit
