// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "chainpulse/explore/acf.hpp"

#include "chainpulse/util/error.hpp"
#include "chainpulse/util/linalg.hpp"

#include <cmath>

namespace chainpulse::explore {

AcfResult acf(std::span<const double> series, std::size_t max_lag) {
    if (series.size() <= max_lag) {
        throw Error("short-series", "series length must exceed max_lag");
    }
    const std::size_t n = series.size();
    const double mu = mean(series);
    double c0 = 0.0;
    for (double y : series) {
        c0 += (y - mu) * (y - mu);
    }
    c0 /= static_cast<double>(n);
    if (!(c0 > 0.0)) {
        throw Error("constant-series", "autocorrelation of a constant series is undefined");
    }
    AcfResult result;
    result.n = n;
    result.confidence_band = 1.96 / std::sqrt(static_cast<double>(n));
    result.values.reserve(max_lag + 1);
    result.values.push_back(1.0);
    for (std::size_t k = 1; k <= max_lag; ++k) {
        double ck = 0.0;
        for (std::size_t t = 0; t + k < n; ++t) {
            ck += (series[t] - mu) * (series[t + k] - mu);
        }
        ck /= static_cast<double>(n);
        result.values.push_back(ck / c0);
    }
    return result;
}

AcfResult pacf(std::span<const double> series, std::size_t max_lag) {
    const AcfResult r = acf(series, max_lag);
    AcfResult result;
    result.n = r.n;
    result.confidence_band = r.confidence_band;
    result.values.assign(max_lag + 1, 0.0);
    result.values[0] = 1.0;
    if (max_lag == 0) {
        return result;
    }
    // Durbin-Levinson: phi[k][k] is the partial autocorrelation at lag k.
    std::vector<double> phi_prev(max_lag + 1, 0.0);
    std::vector<double> phi_cur(max_lag + 1, 0.0);
    phi_prev[1] = r.values[1];
    result.values[1] = r.values[1];
    double v = 1.0 - r.values[1] * r.values[1];
    for (std::size_t k = 2; k <= max_lag; ++k) {
        double num = r.values[k];
        for (std::size_t j = 1; j < k; ++j) {
            num -= phi_prev[j] * r.values[k - j];
        }
        if (!(v > 1e-14)) {
            // Variance exhausted: remaining partials are numerically zero.
            break;
        }
        const double phi_kk = num / v;
        for (std::size_t j = 1; j < k; ++j) {
            phi_cur[j] = phi_prev[j] - phi_kk * phi_prev[k - j];
        }
        phi_cur[k] = phi_kk;
        result.values[k] = phi_kk;
        v *= 1.0 - phi_kk * phi_kk;
        phi_prev = phi_cur;
    }
    return result;
}

} // namespace chainpulse::explore
