#pragma once

#include "bposit/format.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace bposit {

enum class GateKind { And, Or, Not, Xor, Mux2, Const };

/// One lowered gate. Inputs reference earlier node ids, so the graph is
/// acyclic by construction. Node ids [0, num_inputs) are the circuit
/// inputs; gate j is node num_inputs + j.
/// Mux2 reads (sel=a, in0=b, in1=c) and outputs sel ? in1 : in0.
struct Gate {
    GateKind kind = GateKind::Const;
    int a = -1;
    int b = -1;
    int c = -1;
    bool const_value = false;
};

struct Bus {
    std::string name;
    std::vector<int> bits;  // node ids, LSB first
};

struct Netlist {
    int num_inputs = 0;
    std::vector<Gate> gates;
    std::vector<Bus> input_buses;   // partitions [0, num_inputs)
    std::vector<Bus> output_buses;  // arbitrary node ids
    std::map<int, int> mux_fanin_counts;  // logical mux fan-in -> instances

    int node_count() const
    {
        return num_inputs + static_cast<int>(gates.size());
    }
    /// Validates input resolution and bus ranges.
    void check() const;
};

/// Pure combinational evaluation in topological order. The input vector
/// must have exactly num_inputs bits; returns the output-bus bits
/// flattened in declaration order.
std::vector<bool> simulate(const Netlist& n, const std::vector<bool>& inputs);

/// 64 test vectors at once, one lane per bit of each word.
std::vector<std::uint64_t> simulate_batch(
    const Netlist& n, const std::vector<std::uint64_t>& inputs);

/// Named-bus convenience wrapper for values up to 64 bits per bus.
std::map<std::string, std::uint64_t> simulate_buses(
    const Netlist& n, const std::map<std::string, std::uint64_t>& inputs);

struct CircuitMetrics {
    int gate_count = 0;  // lowered gates; constants are free
    int depth = 0;       // longest input-to-output path, unit gate delay
    std::map<int, int> mux_input_counts;
};

CircuitMetrics metrics(const Netlist& n);

/// {"gates":[{"id":..,"kind":..,"in":[..]}],"inputs":[..],"outputs":[..],...}
std::string to_json(const Netlist& n);
std::string to_dot(const Netlist& n);

}  // namespace bposit
