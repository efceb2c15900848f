#pragma once

#include "bposit/bposit_codec.hpp"
#include "bposit/float_codec.hpp"

#include <optional>
#include <vector>

namespace bposit {

struct OutOfRange : Error {
    using Error::Error;
};

/// Nearest encoding of x in any supported format.
BitPattern round_any(const BigRat& x, const FormatSpec& spec);
/// Exact value of any pattern (NaR for Inf/NaN floats).
ExactValue decode_any_value(const BitPattern& p);

/// Upper bound reported for exactly representable probes: n*log10(2).
double decimal_ceiling(const FormatSpec& spec);

/// Decimals of accuracy -log10(|log10(x_hat/x)|) where x_hat is the
/// rounded value of x. Exactly representable x returns the ceiling; sign
/// flips, Zero, and Inf/NaR results score 0. Posit-family probes outside
/// the open dynamic range throw OutOfRange.
double decimal_accuracy(const ExactValue& x, const FormatSpec& spec);
double decimal_accuracy_rational(const BigRat& x, const FormatSpec& spec);

struct AccuracySample {
    int binade = 0;          // probes lie in [2^binade, 2^(binade+1))
    double decimals_worst = 0.0;
    double decimals_mean = 0.0;
};

struct SweepOptions {
    int samples_per_binade = 16;
    std::uint64_t seed = 1;
};

/// Worst-case (and mean) decimals per binade. The worst case combines the
/// analytic supremum over the rounding gaps anchored at sampled points
/// with seeded random probes; deterministic for a given seed.
std::vector<AccuracySample> accuracy_curve(const FormatSpec& spec,
                                           int binade_lo, int binade_hi,
                                           const SweepOptions& opt);

/// Binade range covered by a format's positive values.
void binade_range(const FormatSpec& spec, int* lo, int* hi);

/// CSV rows "format,log2_magnitude,decimals_worst" (or _mean with
/// stat=mean) under a "# meta:" header carrying seed and version.
std::string accuracy_sweep_csv(const std::vector<FormatSpec>& specs,
                               std::optional<int> binade_lo,
                               std::optional<int> binade_hi,
                               const SweepOptions& opt,
                               bool mean_stat = false);

struct ZoneReport {
    double golden_lo = 0.0;  // log2 bounds
    double golden_hi = 0.0;
    BigRat pattern_fraction;  // exact, by enumeration
    double fovea_lo = 0.0;
    double fovea_hi = 0.0;
};

/// Golden zone (posit curve at least as accurate as the float baseline)
/// and fovea (the tent's top plateau) from the per-binade curves; the
/// pattern fraction is counted exactly over (regime, exponent) classes.
ZoneReport golden_zone_stats(const FormatSpec& spec,
                             const FormatSpec& float_baseline,
                             const SweepOptions& opt = {});

/// Fraction of all 2^n patterns whose magnitude falls in binades
/// [zone_lo, zone_hi), counted by class enumeration (no decoding).
BigRat pattern_fraction_in_zone(const FormatSpec& spec, std::int64_t zone_lo,
                                std::int64_t zone_hi);

}  // namespace bposit
