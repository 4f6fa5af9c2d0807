// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef CHAINPULSE_EXPLORE_ACF_HPP
#define CHAINPULSE_EXPLORE_ACF_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace chainpulse::explore {

struct AcfResult {
    std::vector<double> values; // lags 0..max_lag, values[0] == 1
    double confidence_band = 0.0; // +-1.96/sqrt(N)
    std::size_t n = 0;
};

// Biased estimator r_k = c_k / c_0 with denominator N. Requires
// series length > max_lag and a non-constant series.
AcfResult acf(std::span<const double> series, std::size_t max_lag);

// Partial autocorrelation via the Durbin-Levinson recursion on the ACF.
AcfResult pacf(std::span<const double> series, std::size_t max_lag);

} // namespace chainpulse::explore

#endif // CHAINPULSE_EXPLORE_ACF_HPP
