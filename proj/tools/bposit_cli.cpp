// Command-line front end: format inspection, conversion, accuracy sweeps,
// zone statistics, circuit reports, and differential fuzzing.

#include "bposit/accuracy.hpp"
#include "bposit/arithmetic.hpp"
#include "bposit/circuits.hpp"
#include "bposit/posit_codec.hpp"
#include "bposit/version.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

using namespace bposit;

namespace {

/// Exact rational from a decimal string like "-1.4657e-52".
BigRat parse_decimal(const std::string& text)
{
    std::size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        neg = text[i] == '-';
        ++i;
    }
    BigInt mant = 0;
    std::int64_t frac_digits = 0;
    bool any = false, dot = false;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '.') {
            if (dot) throw Error("bad number: " + text);
            dot = true;
        } else if (c >= '0' && c <= '9') {
            mant = mant * 10 + (c - '0');
            if (dot) ++frac_digits;
            any = true;
        } else {
            break;
        }
    }
    std::int64_t exp10 = 0;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            eneg = text[i] == '-';
            ++i;
        }
        bool edig = false;
        for (; i < text.size(); ++i) {
            if (text[i] < '0' || text[i] > '9') break;
            exp10 = exp10 * 10 + (text[i] - '0');
            edig = true;
        }
        if (!edig) throw Error("bad exponent in: " + text);
        if (eneg) exp10 = -exp10;
    }
    if (!any || i != text.size()) {
        throw Error("bad number: " + text);
    }
    BigRat v(mant);
    const std::int64_t e = exp10 - frac_digits;
    BigInt p10 = 1;
    for (std::int64_t k = 0; k < (e < 0 ? -e : e); ++k) p10 *= 10;
    if (e >= 0) {
        v *= BigRat(p10);
    } else {
        v /= BigRat(p10);
    }
    return neg ? BigRat(-v) : v;
}

std::string value_report(const ExactValue& v, int digits)
{
    if (!v.is_real()) {
        return v.is_nar() ? "NaR" : "0";
    }
    return v.to_decimal_string(digits) + "  (= " + v.to_exact_string() + ")";
}

std::vector<FormatSpec> parse_format_list(const std::string& csv)
{
    std::vector<FormatSpec> specs;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        specs.push_back(FormatSpec::parse(item));
    }
    if (specs.empty()) {
        throw Error("no formats given");
    }
    return specs;
}

const CircuitKind kAllKinds[] = {
    CircuitKind::BPositDecoder, CircuitKind::BPositEncoder,
    CircuitKind::PositDecoder,  CircuitKind::PositEncoder,
    CircuitKind::FloatDecoder,  CircuitKind::FloatEncoder,
};

FormatSpec default_spec_for(CircuitKind kind, int n)
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

int run_inspect(const std::string& fmt, const std::string& pattern,
                int digits, bool json)
{
    const FormatSpec spec = FormatSpec::parse(fmt);
    const BitPattern p = BitPattern::parse(pattern, spec);
    const ExactValue v = decode_any_value(p);
    if (json) {
        std::cout << "{\"format\":\"" << spec.to_string()
                  << "\",\"pattern\":\"" << p.to_hex() << "\",";
        if (spec.is_posit_family()) {
            std::cout << "\"fields\":\"" << to_annotated_string(p) << "\",";
        }
        std::cout << "\"class\":\""
                  << (v.is_nar() ? "NaR" : (v.is_zero() ? "Zero" : "Real"))
                  << "\",\"value\":\""
                  << (v.is_real() ? v.to_decimal_string(digits)
                                  : (v.is_nar() ? "NaR" : "0"))
                  << "\",\"exact\":\"" << v.to_exact_string() << "\"}\n";
        return 0;
    }
    std::cout << "format:  " << spec.to_string() << '\n';
    std::cout << "pattern: " << p.to_hex() << '\n';
    if (spec.is_posit_family()) {
        std::cout << "fields:  " << to_annotated_string(p) << '\n';
        const FieldSet f = decode_reference(p);
        if (f.cls == ValueClass::Real) {
            std::cout << "decoded: s=" << f.sign << " r=" << f.regime
                      << " e=" << f.exponent << " f=" << f.frac_num << "/2^"
                      << f.frac_bits << '\n';
        }
    } else {
        std::cout << "recoded: " << decode_float(p).to_string() << '\n';
    }
    std::cout << "value:   " << value_report(v, digits) << '\n';
    return 0;
}

int run_convert(const std::string& fmt, const std::string& number,
                int digits, bool json)
{
    const FormatSpec spec = FormatSpec::parse(fmt);
    const BigRat x = parse_decimal(number);
    const BitPattern p = round_any(x, spec);
    const ExactValue v = decode_any_value(p);
    std::string rel = "exact";
    if (v.is_real() && x != 0) {
        const BigRat err = (v.to_rational() - x) / x;
        if (err != 0) {
            std::ostringstream os;
            os.precision(3);
            os << std::scientific << err.convert_to<double>();
            rel = os.str();
        }
    }
    if (json) {
        std::cout << "{\"format\":\"" << spec.to_string()
                  << "\",\"pattern\":\"" << p.to_hex() << "\",\"value\":\""
                  << (v.is_real() ? v.to_decimal_string(digits)
                                  : (v.is_nar() ? "NaR" : "0"))
                  << "\",\"rel_error\":\"" << rel << "\"}\n";
        return 0;
    }
    std::cout << "pattern:   " << p.to_hex() << '\n';
    if (spec.is_posit_family()) {
        std::cout << "fields:    " << to_annotated_string(p) << '\n';
    }
    std::cout << "value:     " << value_report(v, digits) << '\n';
    std::cout << "rel error: " << rel << '\n';
    return 0;
}

int run_table(const std::string& fmt, int digits)
{
    const FormatSpec spec = FormatSpec::parse(fmt);
    if (spec.n > 16) {
        throw Error("table listing is limited to 16-bit formats");
    }
    std::cout << "pattern,fields,value,exact\n";
    const std::uint64_t mask = (1ULL << spec.n) - 1;
    for (std::uint64_t i = 0; i < (1ULL << spec.n); ++i) {
        // posit order: start at NaR, i.e. iterate the signed words
        const std::uint64_t p =
            spec.is_posit_family() ? ((i + (1ULL << (spec.n - 1))) & mask)
                                   : i;
        const BitPattern bp(p, spec);
        const ExactValue v = decode_any_value(bp);
        std::cout << bp.to_hex() << ',';
        if (spec.is_posit_family()) {
            std::cout << to_annotated_string(bp);
        }
        std::cout << ','
                  << (v.is_real() ? v.to_decimal_string(digits)
                                  : (v.is_nar() ? "NaR" : "0"))
                  << ',' << v.to_exact_string() << '\n';
    }
    return 0;
}

int run_sweep(const std::string& formats, const std::string& binades,
              int samples, std::uint64_t seed, const std::string& stat,
              const std::string& out)
{
    const auto specs = parse_format_list(formats);
    std::optional<int> lo, hi;
    if (!binades.empty()) {
        const auto colon = binades.find(':');
        if (colon == std::string::npos) {
            throw Error("--binades expects LO:HI");
        }
        lo = std::stoi(binades.substr(0, colon));
        hi = std::stoi(binades.substr(colon + 1));
    }
    SweepOptions opt;
    opt.samples_per_binade = samples;
    opt.seed = seed;
    const std::string csv =
        accuracy_sweep_csv(specs, lo, hi, opt, stat == "mean");
    if (out.empty()) {
        std::cout << csv;
    } else {
        std::ofstream f(out);
        f << csv;
    }
    return 0;
}

int run_zones(const std::string& fmt, const std::string& baseline, bool json)
{
    const FormatSpec spec = FormatSpec::parse(fmt);
    const FormatSpec base = FormatSpec::parse(baseline);
    const ZoneReport z = golden_zone_stats(spec, base);
    const double frac = z.pattern_fraction.convert_to<double>();
    const auto num = boost::multiprecision::numerator(z.pattern_fraction);
    const auto den = boost::multiprecision::denominator(z.pattern_fraction);
    if (json) {
        std::cout << "{\"format\":\"" << spec.to_string()
                  << "\",\"baseline\":\"" << base.to_string()
                  << "\",\"golden_zone_log2\":[" << z.golden_lo << ','
                  << z.golden_hi << "],\"pattern_fraction\":\"" << num << '/'
                  << den << "\",\"pattern_fraction_real\":" << frac
                  << ",\"fovea_log2\":[" << z.fovea_lo << ',' << z.fovea_hi
                  << "]}\n";
        return 0;
    }
    std::cout << "format:           " << spec.to_string() << " vs "
              << base.to_string() << '\n';
    std::cout << "golden zone log2: [" << z.golden_lo << ", " << z.golden_hi
              << ")\n";
    std::cout << "pattern fraction: " << num << '/' << den << " = " << frac
              << '\n';
    std::cout << "fovea log2:       [" << z.fovea_lo << ", " << z.fovea_hi
              << ")\n";
    return 0;
}

int run_circuit_report(const std::string& sizes_csv,
                       const std::string& json_out, const std::string& dot_dir)
{
    std::vector<int> sizes;
    std::stringstream ss(sizes_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        sizes.push_back(std::stoi(item));
    }
    std::ostringstream js;
    js << "{";
    bool first = true;
    std::cout << "circuit,format,gates,depth,mux_fanins\n";
    for (CircuitKind kind : kAllKinds) {
        for (int n : sizes) {
            const FormatSpec spec = default_spec_for(kind, n);
            const Netlist nl = build_circuit(kind, spec);
            const CircuitMetrics m = metrics(nl);
            std::cout << circuit_kind_name(kind) << ',' << spec.to_string()
                      << ',' << m.gate_count << ',' << m.depth << ',';
            bool f2 = true;
            for (const auto& [fanin, cnt] : m.mux_input_counts) {
                if (!f2) std::cout << ' ';
                f2 = false;
                std::cout << fanin << 'x' << cnt;
            }
            std::cout << '\n';
            if (!json_out.empty()) {
                if (!first) js << ',';
                first = false;
                js << '"' << circuit_kind_name(kind) << ':'
                   << spec.to_string() << "\":" << to_json(nl);
            }
            if (!dot_dir.empty()) {
                std::filesystem::create_directories(dot_dir);
                std::ofstream f(dot_dir + "/" + circuit_kind_name(kind) +
                                "-" + std::to_string(n) + ".dot");
                f << to_dot(nl);
            }
        }
    }
    js << "}";
    if (!json_out.empty()) {
        std::ofstream f(json_out);
        f << js.str() << '\n';
    }
    return 0;
}

int run_fuzz(const std::string& formats, std::uint64_t count,
             std::uint64_t seed, bool json)
{
    const auto specs = parse_format_list(formats);
    std::uint64_t mismatches = 0;
    std::ostringstream report;
    for (const FormatSpec& spec : specs) {
        std::mt19937_64 rng(seed);
        const std::uint64_t mask =
            spec.n >= 64 ? ~0ULL : ((1ULL << spec.n) - 1);
        std::vector<std::uint64_t> words(count);
        for (auto& w : words) w = rng() & mask;

        std::uint64_t bad_fast = 0, bad_roundtrip = 0;
        if (spec.is_posit_family()) {
            for (std::uint64_t w : words) {
                const BitPattern p(w, spec);
                const FieldSet ref = decode_reference(p);
                if (decode_result_fields(decode_fast(p), spec) != ref) {
                    ++bad_fast;
                }
                if (encode_fields(ref, spec) != p) {
                    ++bad_roundtrip;
                }
            }
        } else {
            for (std::uint64_t w : words) {
                const BitPattern p(w, spec);
                const BitPattern back = encode_float(decode_float(p), spec);
                const BitPattern again =
                    encode_float(decode_float(back), spec);
                if (back != again) {
                    ++bad_roundtrip;
                }
            }
        }

        std::uint64_t bad_netlist = 0;
        std::vector<CircuitKind> kinds;
        if (spec.kind == FormatKind::BPosit) {
            kinds = {CircuitKind::BPositDecoder, CircuitKind::BPositEncoder};
        } else if (spec.kind == FormatKind::StandardPosit) {
            kinds = {CircuitKind::PositDecoder, CircuitKind::PositEncoder};
        } else {
            kinds = {CircuitKind::FloatDecoder, CircuitKind::FloatEncoder};
        }
        for (CircuitKind k : kinds) {
            const Netlist nl = build_circuit(k, spec);
            bad_netlist += circuit_mismatches(nl, k, spec, words);
        }

        mismatches += bad_fast + bad_roundtrip + bad_netlist;
        report << spec.to_string() << ": n=" << count
               << " fast_vs_reference=" << bad_fast
               << " roundtrip=" << bad_roundtrip
               << " netlist=" << bad_netlist << '\n';
    }
    if (json) {
        std::cout << "{\"mismatches\":" << mismatches << "}\n";
    } else {
        std::cout << report.str();
        std::cout << (mismatches == 0 ? "OK" : "MISMATCH") << '\n';
    }
    return mismatches == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"bounded-posit format toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "machine-readable output and errors");

    std::string fmt, pattern, number, formats, baseline, binades, stat, out;
    std::string sizes = "16,32,64", json_out, dot_dir;
    int digits = 12, samples = 16;
    std::uint64_t seed = 1, count = 100000;

    auto* inspect = app.add_subcommand("inspect", "decode one pattern");
    inspect->add_option("--format", fmt, "format spec")->required();
    inspect->add_option("pattern", pattern, "hex pattern")->required();
    inspect->add_option("--digits", digits, "significant digits");

    auto* convert =
        app.add_subcommand("convert", "round a decimal value into a format");
    convert->add_option("--format", fmt, "format spec")->required();
    convert->add_option("value", number, "decimal value")->required();
    convert->add_option("--digits", digits, "significant digits");

    auto* table =
        app.add_subcommand("table", "list every pattern of a small format");
    table->add_option("--format", fmt, "format spec")->required();
    table->add_option("--digits", digits, "significant digits");

    auto* sweep = app.add_subcommand("sweep", "per-binade accuracy CSV");
    sweep->add_option("--formats", formats, "comma-separated formats")
        ->required();
    sweep->add_option("--binades", binades, "LO:HI binade range");
    sweep->add_option("--samples", samples, "samples per binade");
    sweep->add_option("--seed", seed, "random seed");
    sweep->add_option("--stat", stat, "worst (default) or mean")
        ->check(CLI::IsMember({"worst", "mean"}));
    sweep->add_option("--out", out, "output file (default stdout)");

    auto* zones =
        app.add_subcommand("zones", "golden-zone and fovea statistics");
    zones->add_option("--format", fmt, "posit-family format")->required();
    zones->add_option("--baseline", baseline, "IEEE baseline")->required();

    auto* circuit = app.add_subcommand(
        "circuit-report", "gate counts, depths, and netlist export");
    circuit->add_option("--sizes", sizes, "comma-separated bit widths");
    circuit->add_option("--export-json", json_out, "write netlists to FILE");
    circuit->add_option("--dot", dot_dir, "write DOT files into DIR");

    auto* fuzz = app.add_subcommand(
        "fuzz", "differential decode/encode/netlist fuzzing");
    fuzz->add_option("--formats", formats, "comma-separated formats")
        ->required();
    fuzz->add_option("--n", count, "patterns per format");
    fuzz->add_option("--seed", seed, "random seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*inspect) return run_inspect(fmt, pattern, digits, json);
        if (*convert) return run_convert(fmt, number, digits, json);
        if (*table) return run_table(fmt, digits);
        if (*sweep) {
            return run_sweep(formats, binades, samples, seed,
                             stat.empty() ? "worst" : stat, out);
        }
        if (*zones) return run_zones(fmt, baseline, json);
        if (*circuit) return run_circuit_report(sizes, json_out, dot_dir);
        if (*fuzz) return run_fuzz(formats, count, seed, json);
    } catch (const std::exception& e) {
        if (json) {
            std::cerr << "{\"error\":\"" << e.what() << "\"}\n";
        } else {
            std::cerr << "error: " << e.what() << '\n';
        }
        return 2;
    }
    return 0;
}
