#include "bposit/accuracy.hpp"

#include "bposit/version.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace bposit {

namespace {

constexpr double kLog10Of2 = 0.30102999566398119;

std::uint64_t positive_pattern_max(const FormatSpec& spec)
{
    if (spec.is_posit_family()) {
        return (1ULL << (spec.n - 1)) - 1;
    }
    // largest finite: exponent one below all-ones, fraction all ones
    const std::uint64_t inf_pat =
        ((1ULL << spec.exp_width) - 1) << spec.frac_width;
    return inf_pat - 1;
}

BigRat pattern_rational(std::uint64_t bits, const FormatSpec& spec)
{
    return decode_any_value(BitPattern(bits, spec)).to_rational();
}

/// Largest positive finite pattern with value <= x, if any.
std::optional<std::uint64_t> pattern_at_or_below(const BigRat& x,
                                                 const FormatSpec& spec)
{
    std::uint64_t lo = 1;
    std::uint64_t hi = positive_pattern_max(spec);
    if (x < pattern_rational(lo, spec)) {
        return std::nullopt;
    }
    while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo + 1) / 2;
        if (pattern_rational(mid, spec) <= x) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    return lo;
}

double rat_log10(const BigRat& r)
{
    return std::log10(r.convert_to<double>());
}

double decimals_from_err(double err_log10, double ceiling)
{
    if (err_log10 <= 0.0) {
        return ceiling;
    }
    const double d = -std::log10(err_log10);
    return std::clamp(d, 0.0, ceiling);
}

struct FormatRange {
    std::int64_t lo;  // closed log2 bounds of probe admissibility
    std::int64_t hi;
};

FormatRange probe_range(const FormatSpec& spec)
{
    if (spec.is_posit_family()) {
        const FormatExtremes ex = format_extremes(spec);
        return {ex.log2_floor_minpos, ex.log2_ceil_maxpos};
    }
    const std::int64_t emax = (1LL << (spec.exp_width - 1)) - 1;
    const std::int64_t emin_sub = 1 - emax - spec.frac_width;
    return {emin_sub, emax + 1};
}

BigRat pow2_rat(std::int64_t k)
{
    if (k >= 0) {
        return BigRat(BigInt(1) << k);
    }
    return BigRat(1, BigInt(1) << -k);
}

BigRat rat_min(const BigRat& a, const BigRat& b) { return a < b ? a : b; }
BigRat rat_max(const BigRat& a, const BigRat& b) { return a > b ? a : b; }

}  // namespace

BitPattern round_any(const BigRat& x, const FormatSpec& spec)
{
    if (spec.is_posit_family()) {
        return round_rational(x, spec);
    }
    return round_rational_to_float(x, spec);
}

ExactValue decode_any_value(const BitPattern& p)
{
    if (p.spec.is_posit_family()) {
        return fields_to_value(decode_reference(p), p.spec);
    }
    return decode_float(p).to_value();
}

double decimal_ceiling(const FormatSpec& spec)
{
    return spec.n * kLog10Of2;
}

double decimal_accuracy_rational(const BigRat& x, const FormatSpec& spec)
{
    validate_format(spec);
    if (x == 0) {
        throw OutOfRange("accuracy probe must be nonzero");
    }
    const BigRat ax = x < 0 ? BigRat(-x) : x;
    if (spec.is_posit_family()) {
        const FormatRange r = probe_range(spec);
        if (ax < pow2_rat(r.lo) || ax > pow2_rat(r.hi)) {
            throw OutOfRange("probe magnitude outside the dynamic range");
        }
    }
    const double ceiling = decimal_ceiling(spec);
    const BitPattern p = round_any(x, spec);
    const ExactValue v = decode_any_value(p);
    if (!v.is_real()) {
        return 0.0;
    }
    const BigRat vr = v.to_rational();
    if ((vr < 0) != (x < 0)) {
        return 0.0;
    }
    if (vr == x) {
        return ceiling;
    }
    const double err = std::fabs(rat_log10(vr / x));
    return decimals_from_err(err, ceiling);
}

double decimal_accuracy(const ExactValue& x, const FormatSpec& spec)
{
    if (!x.is_real()) {
        throw OutOfRange("accuracy probe must be finite nonzero");
    }
    return decimal_accuracy_rational(x.to_rational(), spec);
}

void binade_range(const FormatSpec& spec, int* lo, int* hi)
{
    const FormatRange r = probe_range(spec);
    *lo = static_cast<int>(r.lo);
    *hi = static_cast<int>(r.hi) - 1;
}

std::vector<AccuracySample> accuracy_curve(const FormatSpec& spec,
                                           int binade_lo, int binade_hi,
                                           const SweepOptions& opt)
{
    validate_format(spec);
    const double ceiling = decimal_ceiling(spec);
    const std::uint64_t pat_max = positive_pattern_max(spec);
    const BigRat v_min = pattern_rational(1, spec);
    const BigRat v_max = pattern_rational(pat_max, spec);
    const int samples = std::max(1, opt.samples_per_binade);
    const bool posit = spec.is_posit_family();

    std::vector<AccuracySample> out;
    for (int k = binade_lo; k <= binade_hi; ++k) {
        const BigRat bin_lo = pow2_rat(k);
        const BigRat bin_hi = pow2_rat(k + 1);

        // supremum of |log10(x_hat/x)| over one rounding gap clipped to the
        // binade; an open side means unbounded error (float flush/overflow)
        double worst_err = 0.0;
        auto consider_gap = [&](const std::optional<std::uint64_t>& below) {
            if (!below.has_value()) {
                // below the smallest positive value
                const BigRat s_hi = rat_min(v_min, bin_hi);
                if (!(bin_lo < s_hi)) {
                    return;
                }
                if (posit) {
                    // saturation: everything rounds up to minpos
                    worst_err =
                        std::max(worst_err, rat_log10(v_min / bin_lo));
                } else {
                    // float: below v_min/2 flushes to zero
                    if (bin_lo < v_min / 2) {
                        worst_err = 1e9;
                    } else {
                        worst_err =
                            std::max(worst_err, rat_log10(v_min / bin_lo));
                    }
                }
                return;
            }
            if (*below == pat_max) {
                // above the largest finite value
                const BigRat s_lo = rat_max(v_max, bin_lo);
                if (!(s_lo < bin_hi)) {
                    return;
                }
                if (posit) {
                    worst_err =
                        std::max(worst_err, rat_log10(bin_hi / v_max));
                } else {
                    // float: overflow to infinity past the rounding cut
                    worst_err = 1e9;
                }
                return;
            }
            const BigRat va = pattern_rational(*below, spec);
            const BigRat vb = pattern_rational(*below + 1, spec);
            const BigRat mid = (va + vb) / 2;
            {
                const BigRat s_lo = rat_max(va, bin_lo);
                const BigRat s_hi = rat_min(mid, bin_hi);
                if (s_lo < s_hi) {
                    worst_err = std::max(worst_err, rat_log10(s_hi / va));
                }
            }
            {
                const BigRat s_lo = rat_max(mid, bin_lo);
                const BigRat s_hi = rat_min(vb, bin_hi);
                if (s_lo < s_hi) {
                    worst_err = std::max(worst_err, rat_log10(vb / s_lo));
                }
            }
        };

        // anchors through the binade; the first one pins the worst gap of
        // a uniformly spaced binade
        std::optional<std::uint64_t> last;
        bool have_last = false;
        for (int j = 0; j < samples; ++j) {
            const BigRat x = bin_lo * BigRat(samples + j, samples);
            if (!(x < bin_hi)) {
                break;
            }
            const auto below = pattern_at_or_below(x, spec);
            if (have_last && below == last) {
                continue;
            }
            have_last = true;
            last = below;
            consider_gap(below);
        }
        {
            // anchors may stop short of the gap touching the binade top
            auto tb = pattern_at_or_below(bin_hi, spec);
            if (tb && pattern_rational(*tb, spec) == bin_hi) {
                if (*tb == 1) {
                    tb = std::nullopt;
                } else {
                    *tb -= 1;
                }
            }
            consider_gap(tb);
        }

        AccuracySample s;
        s.binade = k;
        s.decimals_worst = decimals_from_err(worst_err, ceiling);

        // seeded random probes feed the mean statistic
        std::mt19937_64 rng(opt.seed ^
                            (0x9E3779B97F4A7C15ULL *
                             static_cast<std::uint64_t>(k + 4096)));
        double sum = 0.0;
        int cnt = 0;
        for (int j = 0; j < samples; ++j) {
            const std::uint64_t u = rng();
            const BigRat x =
                bin_lo * (BigRat(1) + BigRat(BigInt(u), BigInt(1) << 64));
            try {
                const double d = decimal_accuracy_rational(x, spec);
                sum += d;
                cnt += 1;
                s.decimals_worst = std::min(s.decimals_worst, d);
            } catch (const OutOfRange&) {
            }
        }
        s.decimals_mean = cnt > 0 ? sum / cnt : s.decimals_worst;
        out.push_back(s);
    }
    return out;
}

std::string accuracy_sweep_csv(const std::vector<FormatSpec>& specs,
                               std::optional<int> binade_lo,
                               std::optional<int> binade_hi,
                               const SweepOptions& opt, bool mean_stat)
{
    std::ostringstream os;
    os << "# meta: version=" << kVersion << " seed=" << opt.seed
       << " samples_per_binade=" << opt.samples_per_binade
       << " stat=" << (mean_stat ? "mean" : "worst")
       << " ceiling=n*log10(2)\n";
    os << "format,log2_magnitude,"
       << (mean_stat ? "decimals_mean" : "decimals_worst") << '\n';
    os.setf(std::ios::fixed);
    os.precision(6);
    for (const FormatSpec& spec : specs) {
        int lo, hi;
        binade_range(spec, &lo, &hi);
        if (spec.kind == FormatKind::IeeeBinary) {
            // float curves extend (at zero decimals) past their range when
            // the caller pins wider bounds for comparison plots
            if (binade_lo) lo = *binade_lo;
            if (binade_hi) hi = *binade_hi;
        } else {
            if (binade_lo) lo = std::max(lo, *binade_lo);
            if (binade_hi) hi = std::min(hi, *binade_hi);
        }
        for (const AccuracySample& s : accuracy_curve(spec, lo, hi, opt)) {
            os << spec.to_string() << ',' << s.binade << ','
               << (mean_stat ? s.decimals_mean : s.decimals_worst) << '\n';
        }
    }
    return os.str();
}

BigRat pattern_fraction_in_zone(const FormatSpec& spec, std::int64_t zone_lo,
                                std::int64_t zone_hi)
{
    validate_format(spec);
    if (!spec.is_posit_family()) {
        throw InvalidFormat("pattern enumeration needs a posit-family spec");
    }
    const int n = spec.n;
    const int cap = spec.regime_cap();
    const int es = spec.exp_size;

    BigInt in_zone = 0;
    for (int r = -cap; r <= cap - 1; ++r) {
        const int run = r >= 0 ? r + 1 : -r;
        if (run > n - 1) {
            continue;  // the run cannot fit in the word
        }
        const int size = spec.regime_size_for(r);
        const int avail = n - 1 - size;
        const int ebits = std::min(es, avail);
        const int fb = std::max(0, avail - es);
        for (std::uint64_t idx = 0; idx < (1ULL << ebits); ++idx) {
            const std::uint64_t e = idx << (es - ebits);
            const std::int64_t T =
                static_cast<std::int64_t>(r) * (1LL << es) +
                static_cast<std::int64_t>(e);
            if (T < zone_lo || T >= zone_hi) {
                continue;
            }
            BigInt cnt = BigInt(1) << fb;
            // the all-zero body would scan as the deepest regime, but it
            // is the Zero pattern, not a Real one
            if (r == -cap && e == 0) {
                cnt -= 1;
            }
            in_zone += cnt;
        }
    }
    // negation is a bijection between positive and negative reals
    return BigRat(in_zone * 2, BigInt(1) << n);
}

ZoneReport golden_zone_stats(const FormatSpec& spec,
                             const FormatSpec& float_baseline,
                             const SweepOptions& opt)
{
    validate_format(spec);
    validate_format(float_baseline);
    if (!spec.is_posit_family() ||
        float_baseline.kind != FormatKind::IeeeBinary) {
        throw InvalidFormat(
            "zone statistics compare a posit-family format to an IEEE "
            "baseline");
    }
    int lo, hi;
    binade_range(spec, &lo, &hi);
    const auto pc = accuracy_curve(spec, lo, hi, opt);
    const auto fc = accuracy_curve(float_baseline, lo, hi, opt);

    const int zero_idx = -lo;
    const double eps = 1e-9;
    auto posit_wins = [&](int i) {
        return pc[i].decimals_worst >= fc[i].decimals_worst - eps;
    };
    if (zero_idx < 0 || zero_idx >= (int)pc.size() || !posit_wins(zero_idx)) {
        throw Error("golden zone does not contain magnitude 1");
    }
    int a = zero_idx, b = zero_idx;
    while (a - 1 >= 0 && posit_wins(a - 1)) --a;
    while (b + 1 < (int)pc.size() && posit_wins(b + 1)) ++b;

    ZoneReport z;
    z.golden_lo = lo + a;
    z.golden_hi = lo + b + 1;
    z.pattern_fraction = pattern_fraction_in_zone(
        spec, static_cast<std::int64_t>(z.golden_lo),
        static_cast<std::int64_t>(z.golden_hi));

    double peak = 0.0;
    int peak_i = zero_idx;
    for (int i = 0; i < (int)pc.size(); ++i) {
        if (pc[i].decimals_worst > peak) {
            peak = pc[i].decimals_worst;
            peak_i = i;
        }
    }
    int fa = peak_i, fb = peak_i;
    auto at_peak = [&](int i) { return pc[i].decimals_worst >= peak - eps; };
    while (fa - 1 >= 0 && at_peak(fa - 1)) --fa;
    while (fb + 1 < (int)pc.size() && at_peak(fb + 1)) ++fb;
    z.fovea_lo = lo + fa;
    z.fovea_hi = lo + fb + 1;
    return z;
}

}  // namespace bposit
