// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "chainpulse/explore/ecdf.hpp"

#include "chainpulse/util/error.hpp"

#include <algorithm>

namespace chainpulse::explore {

EcdfTable EcdfTable::from_samples(std::vector<double> samples) {
    if (samples.empty()) {
        throw Error("empty-sample", "ecdf requires a non-empty sample");
    }
    std::sort(samples.begin(), samples.end());
    EcdfTable table;
    table.n_ = samples.size();
    const double n = static_cast<double>(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (i + 1 < samples.size() && samples[i + 1] == samples[i]) {
            continue; // collapse ties into the last index of the run
        }
        table.values_.push_back(samples[i]);
        table.cumulative_.push_back(static_cast<double>(i + 1) / n);
    }
    table.cumulative_.back() = 1.0;
    return table;
}

double EcdfTable::operator()(double x) const {
    const auto it = std::upper_bound(values_.begin(), values_.end(), x);
    if (it == values_.begin()) {
        return 0.0;
    }
    const auto idx = static_cast<std::size_t>(it - values_.begin()) - 1;
    return cumulative_[idx];
}

EcdfTable ecdf(std::span<const double> samples) {
    return EcdfTable::from_samples(std::vector<double>(samples.begin(), samples.end()));
}

} // namespace chainpulse::explore
