#include "bposit/netlist.hpp"

#include <algorithm>
#include <sstream>

namespace bposit {

namespace {

const char* kind_name(GateKind k)
{
    switch (k) {
    case GateKind::And:
        return "AND";
    case GateKind::Or:
        return "OR";
    case GateKind::Not:
        return "NOT";
    case GateKind::Xor:
        return "XOR";
    case GateKind::Mux2:
        return "MUX2";
    case GateKind::Const:
        return "CONST";
    }
    return "?";
}

int fanin(GateKind k)
{
    switch (k) {
    case GateKind::Const:
        return 0;
    case GateKind::Not:
        return 1;
    case GateKind::Mux2:
        return 3;
    default:
        return 2;
    }
}

}  // namespace

void Netlist::check() const
{
    for (std::size_t j = 0; j < gates.size(); ++j) {
        const Gate& g = gates[j];
        const int id = num_inputs + static_cast<int>(j);
        const int ins[3] = {g.a, g.b, g.c};
        for (int k = 0; k < fanin(g.kind); ++k) {
            if (ins[k] < 0 || ins[k] >= id) {
                throw Error("netlist gate input does not resolve");
            }
        }
    }
    for (const Bus& b : input_buses) {
        for (int id : b.bits) {
            if (id < 0 || id >= num_inputs) {
                throw Error("input bus references a non-input node");
            }
        }
    }
    for (const Bus& b : output_buses) {
        for (int id : b.bits) {
            if (id < 0 || id >= node_count()) {
                throw Error("output bus references an unknown node");
            }
        }
    }
}

std::vector<std::uint64_t> simulate_batch(
    const Netlist& n, const std::vector<std::uint64_t>& inputs)
{
    if (static_cast<int>(inputs.size()) != n.num_inputs) {
        throw WidthMismatch("simulation input width mismatch");
    }
    std::vector<std::uint64_t> val(n.node_count());
    std::copy(inputs.begin(), inputs.end(), val.begin());
    int id = n.num_inputs;
    for (const Gate& g : n.gates) {
        std::uint64_t v = 0;
        switch (g.kind) {
        case GateKind::Const:
            v = g.const_value ? ~0ULL : 0ULL;
            break;
        case GateKind::Not:
            v = ~val[g.a];
            break;
        case GateKind::And:
            v = val[g.a] & val[g.b];
            break;
        case GateKind::Or:
            v = val[g.a] | val[g.b];
            break;
        case GateKind::Xor:
            v = val[g.a] ^ val[g.b];
            break;
        case GateKind::Mux2:
            v = (val[g.a] & val[g.c]) | (~val[g.a] & val[g.b]);
            break;
        }
        val[id++] = v;
    }
    std::vector<std::uint64_t> out;
    for (const Bus& b : n.output_buses) {
        for (int bit : b.bits) {
            out.push_back(val[bit]);
        }
    }
    return out;
}

std::vector<bool> simulate(const Netlist& n, const std::vector<bool>& inputs)
{
    std::vector<std::uint64_t> lanes(inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        lanes[i] = inputs[i] ? 1 : 0;
    }
    const auto out = simulate_batch(n, lanes);
    std::vector<bool> res(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        res[i] = (out[i] & 1) != 0;
    }
    return res;
}

std::map<std::string, std::uint64_t> simulate_buses(
    const Netlist& n, const std::map<std::string, std::uint64_t>& inputs)
{
    std::vector<bool> in(n.num_inputs, false);
    for (const Bus& b : n.input_buses) {
        auto it = inputs.find(b.name);
        const std::uint64_t v = it == inputs.end() ? 0 : it->second;
        for (std::size_t i = 0; i < b.bits.size(); ++i) {
            in[b.bits[i]] = ((v >> i) & 1) != 0;
        }
    }
    const auto out = simulate(n, in);
    std::map<std::string, std::uint64_t> res;
    std::size_t k = 0;
    for (const Bus& b : n.output_buses) {
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < b.bits.size(); ++i, ++k) {
            if (out[k]) {
                v |= 1ULL << i;
            }
        }
        res[b.name] = v;
    }
    return res;
}

CircuitMetrics metrics(const Netlist& n)
{
    CircuitMetrics m;
    m.mux_input_counts = n.mux_fanin_counts;
    std::vector<int> depth(n.node_count(), 0);
    int id = n.num_inputs;
    for (const Gate& g : n.gates) {
        int d = 0;
        const int ins[3] = {g.a, g.b, g.c};
        for (int k = 0; k < fanin(g.kind); ++k) {
            d = std::max(d, depth[ins[k]]);
        }
        if (g.kind != GateKind::Const) {
            ++m.gate_count;
            d += 1;
        }
        depth[id++] = d;
    }
    for (const Bus& b : n.output_buses) {
        for (int bit : b.bits) {
            m.depth = std::max(m.depth, depth[bit]);
        }
    }
    return m;
}

std::string to_json(const Netlist& n)
{
    std::ostringstream os;
    os << "{\"gates\":[";
    for (std::size_t j = 0; j < n.gates.size(); ++j) {
        const Gate& g = n.gates[j];
        if (j) os << ',';
        os << "{\"id\":" << (n.num_inputs + j) << ",\"kind\":\""
           << kind_name(g.kind) << "\",\"in\":[";
        const int ins[3] = {g.a, g.b, g.c};
        for (int k = 0; k < fanin(g.kind); ++k) {
            if (k) os << ',';
            os << ins[k];
        }
        os << ']';
        if (g.kind == GateKind::Const) {
            os << ",\"value\":" << (g.const_value ? 1 : 0);
        }
        os << '}';
    }
    os << "],\"inputs\":[";
    bool first = true;
    for (const Bus& b : n.input_buses) {
        for (int bit : b.bits) {
            if (!first) os << ',';
            first = false;
            os << bit;
        }
    }
    os << "],\"outputs\":[";
    first = true;
    for (const Bus& b : n.output_buses) {
        for (int bit : b.bits) {
            if (!first) os << ',';
            first = false;
            os << bit;
        }
    }
    os << "],\"input_buses\":[";
    for (std::size_t i = 0; i < n.input_buses.size(); ++i) {
        if (i) os << ',';
        os << "{\"name\":\"" << n.input_buses[i].name << "\",\"bits\":[";
        for (std::size_t k = 0; k < n.input_buses[i].bits.size(); ++k) {
            if (k) os << ',';
            os << n.input_buses[i].bits[k];
        }
        os << "]}";
    }
    os << "],\"output_buses\":[";
    for (std::size_t i = 0; i < n.output_buses.size(); ++i) {
        if (i) os << ',';
        os << "{\"name\":\"" << n.output_buses[i].name << "\",\"bits\":[";
        for (std::size_t k = 0; k < n.output_buses[i].bits.size(); ++k) {
            if (k) os << ',';
            os << n.output_buses[i].bits[k];
        }
        os << "]}";
    }
    os << "]}";
    return os.str();
}

std::string to_dot(const Netlist& n)
{
    std::ostringstream os;
    os << "digraph netlist {\n  rankdir=LR;\n";
    for (const Bus& b : n.input_buses) {
        for (std::size_t i = 0; i < b.bits.size(); ++i) {
            os << "  n" << b.bits[i] << " [shape=box,label=\"" << b.name
               << '[' << i << "]\"];\n";
        }
    }
    int id = n.num_inputs;
    for (const Gate& g : n.gates) {
        os << "  n" << id << " [label=\"" << kind_name(g.kind);
        if (g.kind == GateKind::Const) {
            os << ' ' << (g.const_value ? 1 : 0);
        }
        os << "\"];\n";
        const int ins[3] = {g.a, g.b, g.c};
        for (int k = 0; k < fanin(g.kind); ++k) {
            os << "  n" << ins[k] << " -> n" << id << ";\n";
        }
        ++id;
    }
    for (const Bus& b : n.output_buses) {
        for (std::size_t i = 0; i < b.bits.size(); ++i) {
            os << "  o_" << b.name << '_' << i << " [shape=box,label=\""
               << b.name << '[' << i << "]\"];\n";
            os << "  n" << b.bits[i] << " -> o_" << b.name << '_' << i
               << ";\n";
        }
    }
    os << "}\n";
    return os.str();
}

}  // namespace bposit
