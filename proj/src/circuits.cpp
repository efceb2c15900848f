#include "bposit/circuits.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <tuple>

namespace bposit {

namespace {

using BitVec = std::vector<int>;

/// Netlist construction with constant folding and structural dedup, so the
/// metrics reflect a minimally cleaned-up circuit rather than padding
/// artifacts.
class Builder {
public:
    Netlist nl;

    BitVec input(const std::string& name, int width)
    {
        Bus b;
        b.name = name;
        for (int i = 0; i < width; ++i) {
            b.bits.push_back(nl.num_inputs++);
        }
        nl.input_buses.push_back(b);
        return b.bits;
    }

    void output(const std::string& name, const BitVec& bits)
    {
        nl.output_buses.push_back(Bus{name, bits});
    }
    void output(const std::string& name, int bit)
    {
        nl.output_buses.push_back(Bus{name, {bit}});
    }

    int constant(bool v)
    {
        int& slot = const_cache_[v ? 1 : 0];
        if (slot < 0) {
            slot = emit(GateKind::Const, -1, -1, -1, v);
        }
        return slot;
    }

    bool is_const(int id, bool v) const
    {
        if (id < nl.num_inputs) {
            return false;
        }
        const Gate& g = nl.gates[id - nl.num_inputs];
        return g.kind == GateKind::Const && g.const_value == v;
    }

    int g_not(int a)
    {
        if (is_const(a, false)) return constant(true);
        if (is_const(a, true)) return constant(false);
        return cached(GateKind::Not, a, -1, -1);
    }

    int g_and(int a, int b)
    {
        if (is_const(a, false) || is_const(b, false)) return constant(false);
        if (is_const(a, true)) return b;
        if (is_const(b, true)) return a;
        if (a == b) return a;
        if (a > b) std::swap(a, b);
        return cached(GateKind::And, a, b, -1);
    }

    int g_or(int a, int b)
    {
        if (is_const(a, true) || is_const(b, true)) return constant(true);
        if (is_const(a, false)) return b;
        if (is_const(b, false)) return a;
        if (a == b) return a;
        if (a > b) std::swap(a, b);
        return cached(GateKind::Or, a, b, -1);
    }

    int g_xor(int a, int b)
    {
        if (is_const(a, false)) return b;
        if (is_const(b, false)) return a;
        if (is_const(a, true)) return g_not(b);
        if (is_const(b, true)) return g_not(a);
        if (a == b) return constant(false);
        if (a > b) std::swap(a, b);
        return cached(GateKind::Xor, a, b, -1);
    }

    int g_mux(int sel, int in0, int in1)
    {
        if (is_const(sel, false)) return in0;
        if (is_const(sel, true)) return in1;
        if (in0 == in1) return in0;
        return cached(GateKind::Mux2, sel, in0, in1);
    }

    // ---- trees and word-level helpers ----

    int and_tree(const BitVec& xs)
    {
        return xs.empty() ? constant(true)
                          : reduce(GateKind::And, xs, 0, (int)xs.size());
    }
    int or_tree(const BitVec& xs)
    {
        return xs.empty() ? constant(false)
                          : reduce(GateKind::Or, xs, 0, (int)xs.size());
    }
    int nor_tree(const BitVec& xs) { return g_not(or_tree(xs)); }

    BitVec vnot(const BitVec& xs)
    {
        BitVec r;
        for (int x : xs) r.push_back(g_not(x));
        return r;
    }
    BitVec vxor_bit(const BitVec& xs, int b)
    {
        BitVec r;
        for (int x : xs) r.push_back(g_xor(x, b));
        return r;
    }
    BitVec vand_bit(const BitVec& xs, int b)
    {
        BitVec r;
        for (int x : xs) r.push_back(g_and(x, b));
        return r;
    }
    BitVec vmux(int sel, const BitVec& in0, const BitVec& in1)
    {
        BitVec r;
        for (std::size_t i = 0; i < in0.size(); ++i) {
            r.push_back(g_mux(sel, in0[i], in1[i]));
        }
        return r;
    }
    BitVec vor(const BitVec& a, const BitVec& c)
    {
        BitVec r;
        for (std::size_t i = 0; i < a.size(); ++i) {
            r.push_back(g_or(a[i], c[i]));
        }
        return r;
    }

    BitVec constants(std::uint64_t v, int width)
    {
        BitVec r;
        for (int i = 0; i < width; ++i) {
            r.push_back(constant((v >> i) & 1));
        }
        return r;
    }

    BitVec prefix_and(const BitVec& xs) { return prefix(GateKind::And, xs); }
    BitVec prefix_or(const BitVec& xs) { return prefix(GateKind::Or, xs); }

    /// a + cin; log depth through the prefix-AND carries.
    BitVec incrementer(const BitVec& a, int cin, int* cout = nullptr)
    {
        const BitVec pre = prefix_and(a);
        BitVec sum;
        int carry = cin;
        for (std::size_t i = 0; i < a.size(); ++i) {
            sum.push_back(g_xor(a[i], carry));
            if (i + 1 < a.size()) {
                carry = g_and(cin, pre[i]);
            }
        }
        if (cout) {
            *cout = a.empty() ? cin : g_and(cin, pre.back());
        }
        return sum;
    }

    /// Ripple-carry a + b + cin (narrow operands only).
    BitVec adder(const BitVec& a, const BitVec& b, int cin)
    {
        BitVec sum;
        int carry = cin;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const int axb = g_xor(a[i], b[i]);
            sum.push_back(g_xor(axb, carry));
            carry = g_or(g_and(a[i], b[i]), g_and(axb, carry));
        }
        return sum;
    }

    /// Balanced MUX2 tree; sel is binary, LSB first. Records the logical
    /// fan-in for the metrics.
    BitVec mux_tree(const BitVec& sel, std::vector<BitVec> data)
    {
        nl.mux_fanin_counts[(int)data.size()] += 1;
        int level = 0;
        while (data.size() > 1) {
            std::vector<BitVec> next;
            for (std::size_t i = 0; i < data.size(); i += 2) {
                if (i + 1 < data.size()) {
                    next.push_back(vmux(sel[level], data[i], data[i + 1]));
                } else {
                    next.push_back(data[i]);
                }
            }
            data = std::move(next);
            ++level;
        }
        return data[0];
    }

    BitVec barrel_left(BitVec v, const BitVec& amount)
    {
        for (std::size_t k = 0; k < amount.size(); ++k) {
            const std::uint64_t sh = 1ULL << k;
            BitVec shifted(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) {
                shifted[i] =
                    i >= sh ? v[i - sh] : constant(false);
            }
            nl.mux_fanin_counts[2] += 1;
            v = vmux(amount[k], v, shifted);
        }
        return v;
    }

    BitVec barrel_right(BitVec v, const BitVec& amount)
    {
        for (std::size_t k = 0; k < amount.size(); ++k) {
            const std::uint64_t sh = 1ULL << k;
            BitVec shifted(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) {
                shifted[i] =
                    i + sh < v.size() ? v[i + sh] : constant(false);
            }
            nl.mux_fanin_counts[2] += 1;
            v = vmux(amount[k], v, shifted);
        }
        return v;
    }

    /// Leading-zero count, input MSB first, divide-and-conquer merge.
    /// Pads with ones on the low side so the count never saturates.
    BitVec lzc_msb_first(BitVec xs)
    {
        int w = 1;
        while (w < (int)xs.size()) w <<= 1;
        while ((int)xs.size() < w) xs.push_back(constant(true));
        struct Part {
            int zero;
            BitVec cnt;
        };
        std::vector<Part> parts;
        for (int x : xs) {
            parts.push_back(Part{g_not(x), {}});
        }
        while (parts.size() > 1) {
            std::vector<Part> next;
            for (std::size_t i = 0; i < parts.size(); i += 2) {
                const Part& hi = parts[i];
                const Part& lo = parts[i + 1];
                Part m;
                m.zero = g_and(hi.zero, lo.zero);
                m.cnt = vmux(hi.zero, hi.cnt, lo.cnt);
                m.cnt.push_back(hi.zero);
                next.push_back(m);
            }
            parts = std::move(next);
        }
        return parts[0].cnt;
    }

private:
    int emit(GateKind k, int a, int b, int c, bool cv = false)
    {
        Gate g;
        g.kind = k;
        g.a = a;
        g.b = b;
        g.c = c;
        g.const_value = cv;
        nl.gates.push_back(g);
        return nl.node_count() - 1;
    }

    int cached(GateKind k, int a, int b, int c)
    {
        const auto key = std::make_tuple(k, a, b, c);
        auto it = cache_.find(key);
        if (it != cache_.end()) {
            return it->second;
        }
        const int id = emit(k, a, b, c);
        cache_.emplace(key, id);
        return id;
    }

    int reduce(GateKind k, const BitVec& xs, int lo, int hi)
    {
        if (hi - lo == 1) return xs[lo];
        const int mid = lo + (hi - lo) / 2;
        const int l = reduce(k, xs, lo, mid);
        const int r = reduce(k, xs, mid, hi);
        return k == GateKind::And ? g_and(l, r) : g_or(l, r);
    }

    BitVec prefix(GateKind k, const BitVec& xs)
    {
        if (xs.size() <= 1) {
            return xs;
        }
        const std::size_t mid = xs.size() / 2;
        const BitVec lo = prefix(k, BitVec(xs.begin(), xs.begin() + mid));
        const BitVec hi = prefix(k, BitVec(xs.begin() + mid, xs.end()));
        BitVec out = lo;
        for (int h : hi) {
            out.push_back(k == GateKind::And ? g_and(lo.back(), h)
                                             : g_or(lo.back(), h));
        }
        return out;
    }

    std::map<std::tuple<GateKind, int, int, int>, int> cache_;
    int const_cache_[2] = {-1, -1};
};

int regime_value_width_for(int cap)
{
    return std::bit_width(static_cast<unsigned>(cap - 1)) + 1;
}

void require_posit_spec(const FormatSpec& spec)
{
    validate_format(spec);
    if (!spec.is_posit_family()) {
        throw UnsupportedKindForSpec("posit circuit needs a posit-family spec");
    }
}

void require_standard_spec(const FormatSpec& spec)
{
    require_posit_spec(spec);
    if (spec.kind != FormatKind::StandardPosit) {
        throw UnsupportedKindForSpec(
            "sequential codec circuits model the uncapped regime; use a "
            "standard-posit spec");
    }
}

void require_ieee_spec(const FormatSpec& spec)
{
    validate_format(spec);
    if (spec.kind != FormatKind::IeeeBinary) {
        throw UnsupportedKindForSpec("float circuit needs an IEEE spec");
    }
}

// --------------------------------------------------------------- decoders

/// Parallel decoder: XOR window, one-hot size detection, one field mux
/// across the regime tap points, priority-encoded regime value. The NOR
/// exception check mirrors the sequential decoder's chck bit.
Netlist build_bposit_decoder(const FormatSpec& spec)
{
    require_posit_spec(spec);
    const int n = spec.n;
    const int cap = spec.regime_cap();
    const int es = spec.exp_size;
    const int rw = regime_value_width_for(cap);
    const int W = n - 3;
    const int fw = std::max(0, W - es);

    Builder b;
    const BitVec word = b.input("word", n);
    const int s = word[n - 1];
    const int run_bit = word[n - 2];

    const int chck = b.nor_tree(BitVec(word.begin(), word.end() - 1));
    const int zero = b.g_and(chck, b.g_not(s));
    const int nar = b.g_and(chck, s);

    // regime window becomes a run of zeros ended by a one
    BitVec x;
    for (int i = 0; i < cap - 1; ++i) {
        x.push_back(b.g_xor(word[n - 3 - i], run_bit));
    }

    const BitVec pnot = b.prefix_and(b.vnot(x));
    BitVec oh(cap);
    oh[0] = x[0];
    for (int i = 1; i < cap - 1; ++i) {
        oh[i] = b.g_and(x[i], pnot[i - 1]);
    }
    oh[cap - 1] = pnot[cap - 2];

    // priority encoder: one-hot -> binary index
    const int bw = std::bit_width(static_cast<unsigned>(cap - 1));
    BitVec idx(bw);
    for (int t = 0; t < bw; ++t) {
        BitVec terms;
        for (int i = 0; i < cap; ++i) {
            if ((i >> t) & 1) {
                terms.push_back(oh[i]);
            }
        }
        idx[t] = b.or_tree(terms);
    }

    // signed regime value: index folded by the inverted run bit
    const int nrb = b.g_not(run_bit);
    BitVec regime(rw);
    for (int t = 0; t < rw; ++t) {
        regime[t] = t < bw ? b.g_xor(idx[t], nrb) : nrb;
    }

    // field mux: tap j exposes the word below sign plus (j+2) regime bits
    std::vector<BitVec> taps;
    for (int j = 0; j <= cap - 2; ++j) {
        BitVec tap(W);
        for (int p = 0; p < W; ++p) {
            tap[p] = p >= j ? word[p - j] : b.constant(false);
        }
        taps.push_back(std::move(tap));
    }
    // both cap-size one-hot lines select the last tap
    const int is_last = oh[cap - 1];
    BitVec sel(bw);
    for (int t = 0; t < bw; ++t) {
        sel[t] =
            b.g_mux(is_last, idx[t], b.constant(((cap - 2) >> t) & 1));
    }
    const BitVec mux_out = b.mux_tree(sel, taps);

    BitVec exp_raw(es);
    for (int t = 0; t < es; ++t) {
        const int p = W - es + t;
        exp_raw[t] = p >= 0 ? mux_out[p] : b.constant(false);
    }
    const BitVec exp_x = b.vxor_bit(exp_raw, s);
    BitVec frac;
    for (int p = 0; p < fw; ++p) {
        frac.push_back(mux_out[p]);
    }

    // fraction-zero test per regime size, straight off the word so it does
    // not wait for the field mux: the five ranges are nested prefixes of
    // the low bits, sharing one common OR plus a few individual bits
    const int common_w = std::max(0, fw - (cap - 2));
    const int or_common =
        b.or_tree(BitVec(word.begin(), word.begin() + common_w));
    BitVec fz_terms;
    for (int i = 0; i < cap; ++i) {
        const int size = std::min(i + 2, cap);
        const int fb = std::max(0, n - 1 - size - es);
        BitVec extra;
        for (int p = common_w; p < fb; ++p) {
            extra.push_back(word[p]);
        }
        const int any =
            fb <= common_w ? (fb > 0 ? or_common : b.constant(false))
                           : b.g_or(or_common, b.or_tree(extra));
        fz_terms.push_back(b.g_and(oh[i], b.g_not(any)));
    }
    const int exp_cin = b.g_and(s, b.or_tree(fz_terms));

    b.output("zero", zero);
    b.output("nar", nar);
    b.output("sign", s);
    b.output("regime", regime);
    b.output("exp", exp_x);
    b.output("frac", frac);
    b.output("exp_cin", exp_cin);
    b.nl.check();
    return b.nl;
}

/// Sequential decoder: exception NOR, divide-and-conquer leading-bit
/// counter, then a barrel shifter exposing exponent and fraction. Field
/// outputs are masked on the exception path so they match the decoded
/// field conventions bit for bit.
Netlist build_posit_decoder(const FormatSpec& spec)
{
    require_standard_spec(spec);
    const int n = spec.n;
    const int es = spec.exp_size;
    const int rw = regime_value_width_for(n - 1);
    const int fw = std::max(0, n - 3 - es);

    Builder b;
    const BitVec word = b.input("word", n);
    const int s = word[n - 1];
    const int run_bit = word[n - 2];

    const int chck = b.nor_tree(BitVec(word.begin(), word.end() - 1));
    const int zero = b.g_and(chck, b.g_not(s));
    const int nar = b.g_and(chck, s);
    const int not_chck = b.g_not(chck);

    // LBC over the body, MSB first, run bits mapped to zeros
    BitVec msb_first;
    for (int i = n - 2; i >= 0; --i) {
        msb_first.push_back(b.g_xor(word[i], run_bit));
    }
    const BitVec run_len = b.lzc_msb_first(msb_first);

    // regime value: run_bit ? run-1 : -run, via -run = inc(~run) and
    // run-1 = ~(-run)
    BitVec run_ext = run_len;
    while ((int)run_ext.size() < rw) run_ext.push_back(b.constant(false));
    const BitVec neg_run =
        b.incrementer(b.vnot(run_ext), b.constant(true));
    const BitVec regime = b.vxor_bit(neg_run, run_bit);

    // shift the regime out; the amount bus gets one extra bit so the
    // full-length run (shift n-1+1) does not wrap
    BitVec run_for_size = run_len;
    run_for_size.push_back(b.constant(false));
    const BitVec size_amt = b.incrementer(run_for_size, b.constant(true));
    const BitVec body(word.begin(), word.end() - 1);
    const BitVec window = b.barrel_left(body, size_amt);

    BitVec exp(es);
    for (int t = 0; t < es; ++t) {
        const int p = (n - 1) - es + t;
        exp[t] = p >= 0 ? window[p] : b.constant(false);
    }
    // drop the two always-ghost low bits so the fraction bus width matches
    // the parallel decoder's
    BitVec frac;
    for (int p = 2; p < n - 1 - es; ++p) {
        frac.push_back(window[p]);
    }
    while ((int)frac.size() < fw) frac.push_back(b.constant(false));
    while ((int)frac.size() > fw) frac.pop_back();

    b.output("zero", zero);
    b.output("nar", nar);
    b.output("sign", b.g_and(s, not_chck));
    b.output("regime", b.vand_bit(regime, not_chck));
    b.output("exp", b.vand_bit(exp, not_chck));
    b.output("frac", b.vand_bit(frac, not_chck));
    b.nl.check();
    return b.nl;
}

/// Classification, subnormal normalization (LZC + left shift), and bias
/// conversion through one shared adder.
Netlist build_float_decoder(const FormatSpec& spec)
{
    require_ieee_spec(spec);
    const int ew = spec.exp_width;
    const int fw = spec.frac_width;
    const std::int64_t bias = (1LL << (ew - 1)) - 1;

    Builder b;
    const BitVec word = b.input("word", spec.n);
    const int s = word[spec.n - 1];
    const BitVec frac_field(word.begin(), word.begin() + fw);
    const BitVec exp_field(word.begin() + fw, word.begin() + fw + ew);

    const int exp_zero = b.nor_tree(exp_field);
    const int exp_ones = b.and_tree(exp_field);
    const int frac_zero = b.nor_tree(frac_field);
    const int is_zero = b.g_and(exp_zero, frac_zero);
    const int is_sub = b.g_and(exp_zero, b.g_not(frac_zero));
    const int is_inf = b.g_and(exp_ones, frac_zero);
    const int is_nan = b.g_and(exp_ones, b.g_not(frac_zero));
    const int finite =
        b.g_or(is_sub, b.g_and(b.g_not(exp_zero), b.g_not(exp_ones)));

    // subnormal normalization
    const BitVec msb_first(frac_field.rbegin(), frac_field.rend());
    const BitVec lz = b.lzc_msb_first(msb_first);
    const BitVec shift_amt = b.incrementer(lz, b.constant(true));
    const BitVec frac_shifted = b.barrel_left(frac_field, shift_amt);

    BitVec sig(fw + 1);
    for (int i = 0; i < fw; ++i) {
        sig[i] = b.g_and(
            b.g_mux(is_sub, frac_field[i], frac_shifted[i]), finite);
    }
    sig[fw] = finite;

    // signed exponent: E - bias for normals, -bias - lz for subnormals;
    // the subtraction shares one adder (~lz + 1 selected by is_sub)
    BitVec in1(ew + 1);
    for (int i = 0; i <= ew; ++i) {
        const int e_ext = i < ew ? exp_field[i] : b.constant(false);
        const int lz_ext =
            i < (int)lz.size() ? b.g_not(lz[i]) : b.constant(true);
        in1[i] = b.g_mux(is_sub, e_ext, lz_ext);
    }
    const BitVec minus_bias =
        b.constants(static_cast<std::uint64_t>(-bias), ew + 1);
    const BitVec sexp = b.adder(in1, minus_bias, is_sub);

    b.output("zero", is_zero);
    b.output("sub", is_sub);
    b.output("inf", is_inf);
    b.output("nan", is_nan);
    b.output("sign", s);
    b.output("signed_exp", b.vand_bit(sexp, finite));
    b.output("sig", sig);
    b.nl.check();
    return b.nl;
}

// --------------------------------------------------------------- encoders

/// Field-wise 2's complement (sign XOR plus deferred carry), regime string
/// through the binary decoder, exponent-overflow regime adjustment by a
/// second mux, and the width-selected packing mux. The significand arrives
/// in signed form with its zero flag precomputed, matching the decoder's
/// deferred-carry handoff.
Netlist build_bposit_encoder(const FormatSpec& spec)
{
    require_posit_spec(spec);
    const int n = spec.n;
    const int cap = spec.regime_cap();
    const int es = spec.exp_size;
    const int rw = regime_value_width_for(cap);
    const int fw = std::max(0, n - 3 - es);

    Builder b;
    const BitVec sgn = b.input("sign", 1);
    const BitVec regime = b.input("regime", rw);  // magnitude domain
    const BitVec exp = b.input("exp", es);        // magnitude domain
    const BitVec frac = b.input("frac", fw);  // signed form, left-aligned
    const BitVec frac_zero = b.input("frac_zero", 1);
    const BitVec in_zero = b.input("zero", 1);
    const BitVec in_nar = b.input("nar", 1);
    const int s = sgn[0];

    const BitVec r_hat = b.vxor_bit(regime, s);
    const BitVec e1 = b.vxor_bit(exp, s);
    const int cin = b.g_and(s, frac_zero[0]);
    int ovf = -1;
    const BitVec e_out = b.incrementer(e1, cin, &ovf);

    // fold to the regime-size code
    const int msb = r_hat[rw - 1];
    BitVec v(rw - 1);
    for (int t = 0; t < rw - 1; ++t) {
        v[t] = b.g_xor(r_hat[t], msb);
    }

    // binary decoder, one line per folded value
    const BitVec vn = b.vnot(v);
    BitVec d(cap);
    for (int k = 0; k < cap; ++k) {
        BitVec lits;
        for (int t = 0; t < rw - 1; ++t) {
            lits.push_back(((k >> t) & 1) ? v[t] : vn[t]);
        }
        d[k] = b.and_tree(lits);
    }

    // the exponent overflow walks the regime value by one; in folded
    // space that shifts the active line down for negative pre-increment
    // regimes (with -1 and -2 both landing on line 0) and up otherwise
    BitVec d_adj(cap);
    for (int k = 0; k < cap; ++k) {
        const int dn = k == 0
                           ? b.g_or(d[0], d[1])
                           : (k + 1 < cap ? d[k + 1] : b.constant(false));
        const int up = k == 0 ? b.constant(false) : d[k - 1];
        d_adj[k] = b.g_mux(msb, up, dn);
    }
    BitVec dd(cap);
    for (int k = 0; k < cap; ++k) {
        dd[k] = b.g_mux(ovf, d[k], d_adj[k]);
    }

    // final regime MSB flips when the increment carries through the low bits
    const BitVec low_bits(r_hat.begin(), r_hat.end() - 1);
    const int low_all = b.and_tree(low_bits);
    const int r_final_msb = b.g_xor(msb, b.g_and(ovf, low_all));
    const int mask = b.g_not(r_final_msb);

    // regime string bits, MSB first: S_0 = mask, S_j = dd[j-1] ^ mask
    BitVec str(cap);
    str[0] = mask;
    for (int j = 1; j < cap; ++j) {
        str[j] = b.g_xor(dd[j - 1], mask);
    }

    // packing candidates per regime size (pure wiring)
    std::vector<BitVec> cands;
    for (int size = 2; size <= cap; ++size) {
        BitVec w(n, b.constant(false));
        w[n - 1] = s;
        for (int j = 0; j < size; ++j) {
            w[n - 2 - j] = str[j];
        }
        const int avail = n - 1 - size;
        const int ebits = std::min(es, avail);
        for (int t = 0; t < ebits; ++t) {
            w[avail - ebits + t] = e_out[es - ebits + t];
        }
        const int fb = std::max(0, avail - es);
        for (int u = 0; u < fb; ++u) {
            w[fb - 1 - u] = frac[fw - 1 - u];
        }
        cands.push_back(std::move(w));
    }

    // select by the adjusted size code; both cap-size lines pick the last
    const int bw = std::bit_width(static_cast<unsigned>(cap - 1));
    BitVec vsel(bw);
    for (int t = 0; t < bw; ++t) {
        BitVec terms;
        for (int k = 0; k < cap; ++k) {
            if ((k >> t) & 1) {
                terms.push_back(dd[k]);
            }
        }
        vsel[t] = b.or_tree(terms);
    }
    const int is_last = dd[cap - 1];
    BitVec sel(bw);
    for (int t = 0; t < bw; ++t) {
        sel[t] =
            b.g_mux(is_last, vsel[t], b.constant(((cap - 2) >> t) & 1));
    }
    BitVec word = b.mux_tree(sel, cands);

    // exception forcing
    BitVec nar_word(n, b.constant(false));
    nar_word[n - 1] = b.constant(true);
    word = b.vmux(in_zero[0], word, BitVec(n, b.constant(false)));
    word = b.vmux(in_nar[0], word, nar_word);

    b.output("word", word);
    b.nl.check();
    return b.nl;
}

/// Run length through a small adder, regime string via a binary decoder
/// plus suffix-OR thermometer, exponent and fraction barrel-shifted below
/// the regime, assembled with ORs. Takes raw-field inputs, so the packing
/// needs no final negation stage.
Netlist build_posit_encoder(const FormatSpec& spec)
{
    require_standard_spec(spec);
    const int n = spec.n;
    const int es = spec.exp_size;
    const int rw = regime_value_width_for(n - 1);
    const int fw = std::max(0, n - 3 - es);

    Builder b;
    const BitVec sgn = b.input("sign", 1);
    const BitVec regime = b.input("regime", rw);  // raw-field domain
    const BitVec exp = b.input("exp", es);
    const BitVec frac = b.input("frac", fw);  // left-aligned
    const BitVec in_zero = b.input("zero", 1);
    const BitVec in_nar = b.input("nar", 1);
    const int s = sgn[0];

    const int msb = regime[rw - 1];
    const int run_bit = b.g_not(msb);
    // run length = msb ? -r : r+1 = (r ^ msb) + 1
    const BitVec folded = b.vxor_bit(regime, msb);
    const BitVec run_len = b.incrementer(folded, b.constant(true));

    // decoder lines: eq[k] when run length == k
    const BitVec rn = b.vnot(run_len);
    std::vector<int> eq(n, -1);
    for (int k = 1; k <= n - 1; ++k) {
        BitVec lits;
        for (int t = 0; t < (int)run_len.size(); ++t) {
            lits.push_back(((k >> t) & 1) ? run_len[t] : rn[t]);
        }
        eq[k] = b.and_tree(lits);
    }

    // thermometer via suffix OR: (run length > j) = OR of eq[j+1..n-1]
    BitVec eq_rev;
    for (int k = n - 1; k >= 1; --k) {
        eq_rev.push_back(eq[k]);
    }
    const BitVec suffix = b.prefix_or(eq_rev);
    auto thermo = [&](int j) { return suffix[n - 2 - j]; };

    // regime field: the run, and the terminator when it fits in the word
    BitVec body(n - 1);
    for (int j = 0; j <= n - 2; ++j) {
        const int run_here = b.g_and(run_bit, thermo(j));
        const int term_here =
            j >= 1 ? b.g_and(b.g_not(run_bit), eq[j]) : b.constant(false);
        body[n - 2 - j] = b.g_or(run_here, term_here);
    }

    // exponent and fraction at the minimal-regime position, then shifted
    // right by (run length - 1) = folded regime
    BitVec ef(n - 1, b.constant(false));
    for (int t = 0; t < es; ++t) {
        ef[n - 4 - t] = exp[es - 1 - t];
    }
    for (int u = 0; u < fw; ++u) {
        ef[n - 4 - es - u] = frac[fw - 1 - u];
    }
    const BitVec shifted = b.barrel_right(ef, folded);
    body = b.vor(body, shifted);

    BitVec word(n);
    word[n - 1] = s;
    for (int i = 0; i < n - 1; ++i) {
        word[i] = body[i];
    }

    BitVec nar_word(n, b.constant(false));
    nar_word[n - 1] = b.constant(true);
    word = b.vmux(in_zero[0], word, BitVec(n, b.constant(false)));
    word = b.vmux(in_nar[0], word, nar_word);

    b.output("word", word);
    b.nl.check();
    return b.nl;
}

/// Subnormal detection from the rebiased exponent, right-shift distance
/// computation, barrel shift, and the special-case forcing muxes.
Netlist build_float_encoder(const FormatSpec& spec)
{
    require_ieee_spec(spec);
    const int ew = spec.exp_width;
    const int fw = spec.frac_width;
    const std::int64_t bias = (1LL << (ew - 1)) - 1;

    Builder b;
    const BitVec sgn = b.input("sign", 1);
    const BitVec sexp = b.input("signed_exp", ew + 1);
    const BitVec sig = b.input("sig", fw + 1);
    const BitVec in_zero = b.input("zero", 1);
    const BitVec in_inf = b.input("inf", 1);
    const BitVec in_nan = b.input("nan", 1);
    const int s = sgn[0];

    // biased exponent candidate
    const BitVec t = b.adder(
        sexp, b.constants(static_cast<std::uint64_t>(bias), ew + 1),
        b.constant(false));
    const int t_neg = t[ew];
    const int t_zero = b.nor_tree(t);
    const int is_sub = b.g_or(t_neg, t_zero);

    // right-shift distance 1 - t = ~t + 2
    const BitVec dist =
        b.adder(b.vnot(t), b.constants(2, ew + 1), b.constant(false));
    const int sw = std::bit_width(static_cast<unsigned>(fw + 1));
    const BitVec dist_low(dist.begin(), dist.begin() + sw);
    BitVec dist_high(dist.begin() + sw, dist.end());
    const int too_far = b.or_tree(dist_high);

    const BitVec sub_shifted = b.barrel_right(sig, dist_low);

    BitVec exp_field(ew);
    for (int i = 0; i < ew; ++i) {
        int e = b.g_mux(is_sub, t[i], b.constant(false));
        e = b.g_mux(b.g_or(in_inf[0], in_nan[0]), e, b.constant(true));
        e = b.g_mux(in_zero[0], e, b.constant(false));
        exp_field[i] = e;
    }
    BitVec frac_field(fw);
    const int kill = b.g_or(in_zero[0], in_inf[0]);
    for (int i = 0; i < fw; ++i) {
        int f = b.g_mux(is_sub, sig[i],
                        b.g_and(sub_shifted[i], b.g_not(too_far)));
        f = b.g_mux(in_nan[0], f, b.constant(i == fw - 1));
        f = b.g_mux(kill, f, b.constant(false));
        frac_field[i] = f;
    }

    BitVec word(spec.n);
    for (int i = 0; i < fw; ++i) {
        word[i] = frac_field[i];
    }
    for (int i = 0; i < ew; ++i) {
        word[fw + i] = exp_field[i];
    }
    word[spec.n - 1] = s;

    b.output("word", word);
    b.nl.check();
    return b.nl;
}

}  // namespace

const char* circuit_kind_name(CircuitKind k)
{
    switch (k) {
    case CircuitKind::BPositDecoder:
        return "bposit-decoder";
    case CircuitKind::BPositEncoder:
        return "bposit-encoder";
    case CircuitKind::PositDecoder:
        return "posit-decoder";
    case CircuitKind::PositEncoder:
        return "posit-encoder";
    case CircuitKind::FloatDecoder:
        return "float-decoder";
    case CircuitKind::FloatEncoder:
        return "float-encoder";
    }
    return "?";
}

Netlist build_circuit(CircuitKind kind, const FormatSpec& spec)
{
    switch (kind) {
    case CircuitKind::BPositDecoder:
        return build_bposit_decoder(spec);
    case CircuitKind::BPositEncoder:
        return build_bposit_encoder(spec);
    case CircuitKind::PositDecoder:
        return build_posit_decoder(spec);
    case CircuitKind::PositEncoder:
        return build_posit_encoder(spec);
    case CircuitKind::FloatDecoder:
        return build_float_decoder(spec);
    case CircuitKind::FloatEncoder:
        return build_float_encoder(spec);
    }
    throw UnsupportedKindForSpec("unknown circuit kind");
}

}  // namespace bposit
