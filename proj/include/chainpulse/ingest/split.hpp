// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef CHAINPULSE_INGEST_SPLIT_HPP
#define CHAINPULSE_INGEST_SPLIT_HPP

#include "chainpulse/core/types.hpp"

#include <cstddef>

namespace chainpulse::ingest {

struct SplitSpec {
    double train_frac = 0.70;
    double test_frac = 0.15;
    double val_frac = 0.15;

    // Throws Error("bad-split") unless all fractions are in [0,1] and sum to
    // 1 within 1e-9.
    void validate() const;
};

struct SplitCounts {
    std::size_t train = 0;
    std::size_t test = 0;
    std::size_t validation = 0;
};

// Train and test counts are the nearest integer to m*frac with exact halves
// rounded down; validation takes the remainder. This is the rounding that
// reproduces a 56286/12061/12061 division of 80408 rows at 0.70/0.15/0.15.
SplitCounts split_counts(std::size_t m, const SplitSpec& spec);

struct SplitResult {
    BlockSeries train;
    BlockSeries test;
    BlockSeries validation;
};

// Chronological contiguous split: train rows first, then test, then
// validation; concatenation reproduces the input exactly.
SplitResult split_dataset(const BlockSeries& series, const SplitSpec& spec);

// Blocks whose timestamp falls in the given day class, order preserved;
// inter-block times are recomputed over the retained subsequence.
BlockSeries filter_day_class(const BlockSeries& series, DayClass day_class);

} // namespace chainpulse::ingest

#endif // CHAINPULSE_INGEST_SPLIT_HPP
