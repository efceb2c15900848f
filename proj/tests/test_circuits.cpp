#include "bposit/circuits.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <json.hpp>
#include <numeric>

using namespace bposit;

namespace {

const FormatSpec b165 = FormatSpec::bposit(16, 6, 5);
const FormatSpec b325 = FormatSpec::bposit(32, 6, 5);
const FormatSpec b645 = FormatSpec::bposit(64, 6, 5);
const FormatSpec p16 = FormatSpec::standard_posit(16, 2);
const FormatSpec p32 = FormatSpec::standard_posit(32, 2);
const FormatSpec p64 = FormatSpec::standard_posit(64, 2);

std::vector<std::uint64_t> all_words(int n)
{
    std::vector<std::uint64_t> w(1ULL << n);
    std::iota(w.begin(), w.end(), 0);
    return w;
}

FormatSpec spec_for(CircuitKind kind, int n)
{
    switch (kind) {
    case CircuitKind::BPositDecoder:
    case CircuitKind::BPositEncoder:
        return FormatSpec::bposit(n, 6, 5);
    case CircuitKind::PositDecoder:
    case CircuitKind::PositEncoder:
        return FormatSpec::standard_posit(n, 2);
    default:
        return FormatSpec::ieee(n);
    }
}

const CircuitKind kAllKinds[] = {
    CircuitKind::BPositDecoder, CircuitKind::BPositEncoder,
    CircuitKind::PositDecoder,  CircuitKind::PositEncoder,
    CircuitKind::FloatDecoder,  CircuitKind::FloatEncoder,
};

}  // namespace

TEST_SUITE_BEGIN("circuits");

TEST_CASE("simulation evaluates a wire-only netlist as the identity")
{
    Netlist nl;
    nl.num_inputs = 4;
    nl.input_buses.push_back(Bus{"in", {0, 1, 2, 3}});
    nl.output_buses.push_back(Bus{"out", {0, 1, 2, 3}});
    nl.check();
    const std::vector<bool> v{true, false, true, true};
    CHECK(simulate(nl, v) == v);
    CHECK(metrics(nl).depth == 0);
    CHECK(metrics(nl).gate_count == 0);

    CHECK_THROWS_AS(simulate(nl, std::vector<bool>(3)), WidthMismatch);
}

TEST_CASE("kind and spec must agree")
{
    CHECK_THROWS_AS(build_circuit(CircuitKind::FloatDecoder, b165),
                    UnsupportedKindForSpec);
    CHECK_THROWS_AS(build_circuit(CircuitKind::BPositDecoder,
                                  FormatSpec::ieee(32)),
                    UnsupportedKindForSpec);
    CHECK_THROWS_AS(build_circuit(CircuitKind::PositDecoder, b165),
                    UnsupportedKindForSpec);
}

TEST_CASE("decoder flags the exception pattern")
{
    const Netlist nl = build_circuit(CircuitKind::BPositDecoder, b165);
    auto out = simulate_buses(nl, {{"word", 0x8000}});
    CHECK(out.at("nar") == 1);
    CHECK(out.at("zero") == 0);
    out = simulate_buses(nl, {{"word", 0x0000}});
    CHECK(out.at("zero") == 1);
    CHECK(out.at("nar") == 0);
}

TEST_CASE("field mux keeps five data inputs at any width")
{
    for (const FormatSpec& s : {b165, b325, b645}) {
        const Netlist nl = build_circuit(CircuitKind::BPositDecoder, s);
        const CircuitMetrics m = metrics(nl);
        REQUIRE(m.mux_input_counts.count(5));
        CHECK(m.mux_input_counts.at(5) == 1);
    }
}

TEST_CASE("netlists match their behavioral codecs, exhaustive 16-bit")
{
    const auto words = all_words(16);
    for (CircuitKind kind : kAllKinds) {
        const FormatSpec s = spec_for(kind, 16);
        const Netlist nl = build_circuit(kind, s);
        CAPTURE(circuit_kind_name(kind));
        CHECK(circuit_mismatches(nl, kind, s, words) == 0);
    }
}

TEST_CASE("netlists match their behavioral codecs, random 32/64-bit")
{
    for (int n : {32, 64}) {
        for (CircuitKind kind : kAllKinds) {
            const FormatSpec s = spec_for(kind, n);
            const Netlist nl = build_circuit(kind, s);
            const auto words =
                testing::random_words(n, 100000, 0xC1AC + n);
            CAPTURE(circuit_kind_name(kind));
            CAPTURE(n);
            CHECK(circuit_mismatches(nl, kind, s, words) == 0);
        }
    }
}

TEST_CASE("bounded decode and encode keep near-constant depth")
{
    for (CircuitKind kind :
         {CircuitKind::BPositDecoder, CircuitKind::BPositEncoder}) {
        int dmin = 1 << 30, dmax = 0;
        for (int n : {16, 32, 64}) {
            const int d =
                metrics(build_circuit(kind, spec_for(kind, n))).depth;
            dmin = std::min(dmin, d);
            dmax = std::max(dmax, d);
        }
        CAPTURE(circuit_kind_name(kind));
        CHECK(dmax - dmin <= 2);
    }
}

TEST_CASE("sequential posit depth grows with precision")
{
    for (CircuitKind kind :
         {CircuitKind::PositDecoder, CircuitKind::PositEncoder}) {
        const int d16 = metrics(build_circuit(kind, spec_for(kind, 16))).depth;
        const int d32 = metrics(build_circuit(kind, spec_for(kind, 32))).depth;
        const int d64 = metrics(build_circuit(kind, spec_for(kind, 64))).depth;
        CAPTURE(circuit_kind_name(kind));
        CHECK(d16 < d32);
        CHECK(d32 < d64);
    }
}

TEST_CASE("bounded circuits are smaller than their sequential counterparts")
{
    for (int n : {32, 64}) {
        const int bd =
            metrics(build_circuit(CircuitKind::BPositDecoder,
                                  FormatSpec::bposit(n, 6, 5)))
                .gate_count;
        const int pd =
            metrics(build_circuit(CircuitKind::PositDecoder,
                                  FormatSpec::standard_posit(n, 2)))
                .gate_count;
        const int be =
            metrics(build_circuit(CircuitKind::BPositEncoder,
                                  FormatSpec::bposit(n, 6, 5)))
                .gate_count;
        const int pe =
            metrics(build_circuit(CircuitKind::PositEncoder,
                                  FormatSpec::standard_posit(n, 2)))
                .gate_count;
        CAPTURE(n);
        CHECK(bd < pd);
        CHECK(be < pe);
    }
}

TEST_CASE("bounded decoder cost grows at most linearly in width")
{
    const int c16 = metrics(build_circuit(CircuitKind::BPositDecoder, b165))
                        .gate_count;
    const int c32 = metrics(build_circuit(CircuitKind::BPositDecoder, b325))
                        .gate_count;
    const int c64 = metrics(build_circuit(CircuitKind::BPositDecoder, b645))
                        .gate_count;
    CHECK(c16 < c32);
    CHECK(c32 < c64);
    // second difference about zero for a linear trend, small slack for the
    // log-depth reduction trees
    CHECK(c64 - c32 <= 2 * (c32 - c16) + 16);
}

TEST_CASE("json and dot exports carry the graph")
{
    const Netlist nl = build_circuit(CircuitKind::BPositDecoder, b165);
    const auto js = nlohmann::json::parse(to_json(nl));
    REQUIRE(js.contains("gates"));
    REQUIRE(js.contains("inputs"));
    REQUIRE(js.contains("outputs"));
    CHECK(js["inputs"].size() == 16);
    CHECK(js["gates"].size() == nl.gates.size());
    bool saw_mux = false;
    for (const auto& g : js["gates"]) {
        REQUIRE(g.contains("id"));
        REQUIRE(g.contains("kind"));
        REQUIRE(g.contains("in"));
        const int id = g["id"].get<int>();
        for (const auto& in : g["in"]) {
            REQUIRE(in.get<int>() < id);  // topological ids, acyclic
        }
        saw_mux |= g["kind"] == "MUX2";
    }
    CHECK(saw_mux);
    CHECK(js["output_buses"].size() == nl.output_buses.size());

    const std::string dot = to_dot(nl);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("word") != std::string::npos);
}

TEST_SUITE_END();
