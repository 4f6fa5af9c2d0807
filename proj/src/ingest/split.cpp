// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "chainpulse/ingest/split.hpp"

#include "chainpulse/core/series.hpp"
#include "chainpulse/util/error.hpp"

#include <cmath>
#include <vector>

namespace chainpulse::ingest {

namespace {

// Nearest integer, halves down: 56285.6 -> 56286 but 1.5 -> 1.
std::size_t round_half_down(double x) {
    return static_cast<std::size_t>(std::ceil(x - 0.5));
}

} // namespace

void SplitSpec::validate() const {
    const double fracs[] = {train_frac, test_frac, val_frac};
    for (double f : fracs) {
        if (!(f >= 0.0 && f <= 1.0)) {
            throw Error("bad-split", "split fractions must lie in [0,1]");
        }
    }
    const double sum = train_frac + test_frac + val_frac;
    if (std::abs(sum - 1.0) > 1e-9) {
        throw Error("bad-split", "split fractions must sum to 1");
    }
}

SplitCounts split_counts(std::size_t m, const SplitSpec& spec) {
    spec.validate();
    SplitCounts counts;
    const double md = static_cast<double>(m);
    counts.train = round_half_down(md * spec.train_frac);
    counts.test = round_half_down(md * spec.test_frac);
    if (counts.train > m) {
        counts.train = m;
    }
    if (counts.test > m - counts.train) {
        counts.test = m - counts.train;
    }
    counts.validation = m - counts.train - counts.test;
    return counts;
}

SplitResult split_dataset(const BlockSeries& series, const SplitSpec& spec) {
    const auto counts = split_counts(series.size(), spec);
    if (series.empty()) {
        throw Error("empty-series", "cannot split an empty series");
    }
    const auto& blocks = series.blocks();
    auto take = [&](std::size_t begin, std::size_t count) {
        std::vector<BlockRecord> part(blocks.begin() + static_cast<std::ptrdiff_t>(begin),
                                      blocks.begin() + static_cast<std::ptrdiff_t>(begin + count));
        return BlockSeries::from_blocks(std::move(part));
    };
    SplitResult result;
    result.train = take(0, counts.train);
    result.test = take(counts.train, counts.test);
    result.validation = take(counts.train + counts.test, counts.validation);
    return result;
}

BlockSeries filter_day_class(const BlockSeries& series, DayClass day_class) {
    std::vector<BlockRecord> kept;
    for (const auto& block : series.blocks()) {
        if (tag_day_class(block.timestamp) == day_class) {
            kept.push_back(block);
        }
    }
    return BlockSeries::from_blocks(std::move(kept));
}

} // namespace chainpulse::ingest
