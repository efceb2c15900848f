#pragma once

#include "bposit/netlist.hpp"

namespace bposit {

enum class CircuitKind {
    BPositDecoder,
    BPositEncoder,
    PositDecoder,
    PositEncoder,
    FloatDecoder,
    FloatEncoder,
};

const char* circuit_kind_name(CircuitKind k);

/// Gate-level model of one codec. Decoder inputs are the bus "word";
/// encoder inputs are the field buses their behavioral twins consume
/// (see the builders for the exact bus lists). Throws
/// UnsupportedKindForSpec when the spec does not fit the kind.
///
/// Lowering rules, fixed so depth/count comparisons are reproducible:
/// k-input muxes become balanced MUX2 trees (depth ceil(log2 k)),
/// shifters become log-stage MUX2 layers, leading-bit counters are
/// divide-and-conquer trees, and wide AND/OR reductions are balanced
/// trees. Every gate costs one unit of delay; constants are free.
Netlist build_circuit(CircuitKind kind, const FormatSpec& spec);

/// Behavioral-model bus values for driving a circuit from one codec word:
/// decoder inputs are the word itself; encoder inputs are derived from its
/// decode. Values are per input bus, in bus declaration order.
std::vector<std::uint64_t> circuit_model_inputs(CircuitKind kind,
                                                const FormatSpec& spec,
                                                std::uint64_t word);
/// Expected output-bus values for the same word.
std::vector<std::uint64_t> circuit_model_outputs(CircuitKind kind,
                                                 const FormatSpec& spec,
                                                 std::uint64_t word);

/// Lane-parallel differential run of the netlist against the behavioral
/// model; returns how many of the words mismatch on any output bit.
std::size_t circuit_mismatches(const Netlist& nl, CircuitKind kind,
                               const FormatSpec& spec,
                               const std::vector<std::uint64_t>& words);

}  // namespace bposit
