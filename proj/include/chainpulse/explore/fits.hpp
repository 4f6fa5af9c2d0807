// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef CHAINPULSE_EXPLORE_FITS_HPP
#define CHAINPULSE_EXPLORE_FITS_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace chainpulse::explore {

struct ExponentialFit {
    double rate = 0.0; // per second, MLE 1/mean
    std::size_t n = 0;
    double ks_stat = 0.0; // sup |ECDF - (1 - e^(-rate x))|
};

// MLE fit of an exponential distribution. All samples must be > 0; throws
// Error("bad-sample") otherwise. The KS statistic is descriptive, no p-value.
ExponentialFit fit_exponential(std::span<const double> samples);

struct PoissonFit {
    double slot_len = 0.0;          // seconds
    double intensity = 0.0;         // expected count per slot
    std::size_t n_slots = 0;
    std::vector<std::size_t> counts; // per-slot event counts
};

// Counts events in consecutive full slots of slot_len over [first, last)
// (trailing partial slot dropped) and reports the mean count per slot.
// Throws Error("short-span") when not even one full slot fits.
PoissonFit fit_poisson_slots(std::span<const double> timestamps, double slot_len);

// Same, but over an explicit [span_begin, span_end) window; events outside
// the window are ignored. Works for empty event sets.
PoissonFit fit_poisson_slots(std::span<const double> timestamps, double slot_len,
                             double span_begin, double span_end);

// Intensity that best matches the *shape* of the per-slot count histogram,
// by least squares between the empirical distribution and the Poisson pmf.
// For Poisson data this agrees with the mean; for over-dispersed counts it
// does not, which is exactly what the cross-scale consistency check probes.
double fit_poisson_intensity_histogram(std::span<const std::size_t> counts);

// fit_poisson_slots with the intensity replaced by the histogram-shape fit.
PoissonFit fit_poisson_histogram(std::span<const double> timestamps, double slot_len);
PoissonFit fit_poisson_histogram(std::span<const double> timestamps, double slot_len,
                                 double span_begin, double span_end);

enum class PoissonVerdict { Consistent, Inconsistent };

struct ConsistencyResult {
    double ratio = 0.0; // intensity_b / (intensity_a * slot_len_b / slot_len_a)
    PoissonVerdict verdict = PoissonVerdict::Inconsistent;
};

// A Poisson process must show the same scaled intensity at every slot
// length. Requires differing slot lengths and intensity_a > 0.
ConsistencyResult poisson_consistency(const PoissonFit& fit_a, const PoissonFit& fit_b,
                                      double tolerance);

} // namespace chainpulse::explore

#endif // CHAINPULSE_EXPLORE_FITS_HPP
