// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef CHAINPULSE_EXPLORE_ECDF_HPP
#define CHAINPULSE_EXPLORE_ECDF_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace chainpulse::explore {

// Empirical CDF as a right-continuous step function. Tied samples collapse
// into one step; the last cumulative probability is exactly 1.
class EcdfTable {
public:
    // Throws Error("empty-sample") on empty input.
    static EcdfTable from_samples(std::vector<double> samples);

    // Fraction of samples <= x.
    double operator()(double x) const;

    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& cumulative() const { return cumulative_; }
    std::size_t sample_count() const { return n_; }

private:
    std::vector<double> values_;
    std::vector<double> cumulative_;
    std::size_t n_ = 0;
};

EcdfTable ecdf(std::span<const double> samples);

} // namespace chainpulse::explore

#endif // CHAINPULSE_EXPLORE_ECDF_HPP
