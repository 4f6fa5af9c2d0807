// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "chainpulse/explore/fits.hpp"

#include "chainpulse/util/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace chainpulse::explore {

ExponentialFit fit_exponential(std::span<const double> samples) {
    if (samples.empty()) {
        throw Error("bad-sample", "fit_exponential requires a non-empty sample");
    }
    double sum = 0.0;
    for (double x : samples) {
        if (!(x > 0.0)) {
            throw Error("bad-sample", "fit_exponential requires strictly positive samples");
        }
        sum += x;
    }
    ExponentialFit fit;
    fit.n = samples.size();
    fit.rate = static_cast<double>(samples.size()) / sum;

    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double model = 1.0 - std::exp(-fit.rate * sorted[i]);
        const double above = static_cast<double>(i + 1) / n - model;
        const double below = model - static_cast<double>(i) / n;
        sup = std::max({sup, above, below});
    }
    fit.ks_stat = sup;
    return fit;
}

namespace {

PoissonFit slot_counts(std::span<const double> timestamps, double slot_len, double begin,
                       double end) {
    if (!(slot_len > 0.0)) {
        throw Error("bad-slot", "slot length must be positive");
    }
    const double span = end - begin;
    const auto n_slots = static_cast<std::size_t>(span > 0.0 ? std::floor(span / slot_len) : 0.0);
    if (n_slots == 0) {
        throw Error("short-span", "span is shorter than one slot");
    }
    PoissonFit fit;
    fit.slot_len = slot_len;
    fit.n_slots = n_slots;
    fit.counts.assign(n_slots, 0);
    for (double t : timestamps) {
        if (t < begin) {
            continue;
        }
        const double offset = (t - begin) / slot_len;
        if (offset >= static_cast<double>(n_slots)) {
            continue; // trailing partial slot (or beyond the window)
        }
        ++fit.counts[static_cast<std::size_t>(offset)];
    }
    std::size_t total = 0;
    for (std::size_t c : fit.counts) {
        total += c;
    }
    fit.intensity = static_cast<double>(total) / static_cast<double>(n_slots);
    return fit;
}

// Sum of squared differences between the empirical count distribution and
// the Poisson pmf with the given intensity.
double poisson_shape_sse(std::span<const std::size_t> counts, double lambda,
                         std::size_t k_max) {
    const double n = static_cast<double>(counts.size());
    std::vector<double> empirical(k_max + 1, 0.0);
    for (std::size_t c : counts) {
        if (c <= k_max) {
            empirical[c] += 1.0 / n;
        }
    }
    double sse = 0.0;
    double pmf = std::exp(-lambda); // k = 0
    for (std::size_t k = 0; k <= k_max; ++k) {
        const double diff = empirical[k] - pmf;
        sse += diff * diff;
        pmf *= lambda / static_cast<double>(k + 1);
    }
    return sse;
}

} // namespace

PoissonFit fit_poisson_slots(std::span<const double> timestamps, double slot_len) {
    if (timestamps.empty()) {
        throw Error("short-span", "no events and no explicit span");
    }
    const auto [lo, hi] = std::minmax_element(timestamps.begin(), timestamps.end());
    return slot_counts(timestamps, slot_len, *lo, *hi);
}

PoissonFit fit_poisson_slots(std::span<const double> timestamps, double slot_len,
                             double span_begin, double span_end) {
    return slot_counts(timestamps, slot_len, span_begin, span_end);
}

double fit_poisson_intensity_histogram(std::span<const std::size_t> counts) {
    if (counts.empty()) {
        throw Error("bad-sample", "histogram fit requires at least one slot");
    }
    std::size_t max_count = 0;
    double mean_count = 0.0;
    for (std::size_t c : counts) {
        max_count = std::max(max_count, c);
        mean_count += static_cast<double>(c);
    }
    mean_count /= static_cast<double>(counts.size());
    if (max_count == 0) {
        return 0.0;
    }
    // The SSE can be multimodal for mixed count distributions, so scan a
    // grid first and polish the best cell by golden-section search.
    const std::size_t k_max = max_count + 2;
    const double lo = 1e-6;
    const double hi = static_cast<double>(k_max);
    const int cells = 400;
    double best_lambda = mean_count;
    double best_sse = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= cells; ++i) {
        const double lambda = lo + (hi - lo) * static_cast<double>(i) / cells;
        const double sse = poisson_shape_sse(counts, lambda, k_max);
        if (sse < best_sse) {
            best_sse = sse;
            best_lambda = lambda;
        }
    }
    const double step = (hi - lo) / cells;
    double a = std::max(lo, best_lambda - step);
    double b = std::min(hi, best_lambda + step);
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = poisson_shape_sse(counts, x1, k_max);
    double f2 = poisson_shape_sse(counts, x2, k_max);
    for (int iter = 0; iter < 80 && (b - a) > 1e-10 * (1.0 + b); ++iter) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = poisson_shape_sse(counts, x1, k_max);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = poisson_shape_sse(counts, x2, k_max);
        }
    }
    return 0.5 * (a + b);
}

PoissonFit fit_poisson_histogram(std::span<const double> timestamps, double slot_len) {
    PoissonFit fit = fit_poisson_slots(timestamps, slot_len);
    fit.intensity = fit_poisson_intensity_histogram(fit.counts);
    return fit;
}

PoissonFit fit_poisson_histogram(std::span<const double> timestamps, double slot_len,
                                 double span_begin, double span_end) {
    PoissonFit fit = fit_poisson_slots(timestamps, slot_len, span_begin, span_end);
    fit.intensity = fit_poisson_intensity_histogram(fit.counts);
    return fit;
}

ConsistencyResult poisson_consistency(const PoissonFit& fit_a, const PoissonFit& fit_b,
                                      double tolerance) {
    if (fit_a.slot_len == fit_b.slot_len) {
        throw Error("bad-slot", "consistency check requires differing slot lengths");
    }
    if (!(fit_a.intensity > 0.0)) {
        throw Error("zero-intensity", "reference intensity must be positive");
    }
    ConsistencyResult result;
    result.ratio = fit_b.intensity / (fit_a.intensity * (fit_b.slot_len / fit_a.slot_len));
    result.verdict = std::abs(result.ratio - 1.0) <= tolerance ? PoissonVerdict::Consistent
                                                               : PoissonVerdict::Inconsistent;
    return result;
}

} // namespace chainpulse::explore
