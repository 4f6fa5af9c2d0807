// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef CHAINPULSE_EXPLORE_SUMMARIES_HPP
#define CHAINPULSE_EXPLORE_SUMMARIES_HPP

#include "chainpulse/core/types.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace chainpulse::explore {

struct AttributeStats {
    double mean = 0.0;
    double stddev = 0.0; // denominator n-1; 0 for a single observation
    double min = 0.0;
    double max = 0.0;
};

// One row per miner with stats of (size in MB, tx count, avg fee in BTC),
// sorted by miner label ("?" sorts first).
struct MinerSummary {
    std::string miner;
    std::size_t block_count = 0;
    AttributeStats size_mb;
    AttributeStats tx_count;
    AttributeStats avg_fee_btc;
};

std::vector<MinerSummary> summary_by_miner(const BlockSeries& series);

std::map<std::string, std::size_t> miner_block_counts(const BlockSeries& series);

struct DayClassCounts {
    std::size_t working = 0;
    std::size_t weekend = 0;
};

std::map<std::string, DayClassCounts> miner_block_counts_by_day(const BlockSeries& series);

// Linear-interpolation quantile between order statistics (the "type 7"
// rule); `sorted` must be ascending and non-empty, p in [0,1].
double quantile_linear(std::span<const double> sorted, double p);

struct QuartileBucket {
    std::size_t count = 0;
    double mean_wait = 0.0;   // seconds
    double median_wait = 0.0; // seconds
};

struct QuartileReport {
    double q1 = 0.0, q2 = 0.0, q3 = 0.0; // fee breakpoints, BTC
    std::array<QuartileBucket, 4> buckets; // fee in (0,Q1], (Q1,Q2], (Q2,Q3], (Q3,inf)
    double overall_mean_wait = 0.0;
    std::size_t total = 0;
    bool degenerate = false; // all breakpoints equal; everything in bucket 1
};

// Confirmation-time statistics by fee quartile over the *confirmed*
// transactions in `txs` (unconfirmed ones are ignored). Ties on a breakpoint
// go to the lower bucket. Throws Error("too-few-txs") for fewer than 4
// confirmed transactions.
QuartileReport confirmation_by_fee_quartile(std::span<const TxRecord> txs);

} // namespace chainpulse::explore

#endif // CHAINPULSE_EXPLORE_SUMMARIES_HPP
