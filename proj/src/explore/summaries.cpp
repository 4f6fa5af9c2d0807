// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "chainpulse/explore/summaries.hpp"

#include "chainpulse/core/series.hpp"
#include "chainpulse/util/error.hpp"
#include "chainpulse/util/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace chainpulse::explore {

namespace {

AttributeStats stats_of(std::span<const double> values) {
    AttributeStats s;
    s.mean = mean(values);
    s.stddev = std::sqrt(sample_variance(values));
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    s.min = *lo;
    s.max = *hi;
    return s;
}

} // namespace

std::vector<MinerSummary> summary_by_miner(const BlockSeries& series) {
    if (series.empty()) {
        throw Error("empty-series", "summary_by_miner requires a non-empty series");
    }
    struct Columns {
        std::vector<double> size_mb, tx_count, fee_btc;
    };
    std::map<std::string, Columns> by_miner;
    for (const auto& b : series.blocks()) {
        auto& cols = by_miner[b.miner];
        cols.size_mb.push_back(static_cast<double>(b.size) / 1e6);
        cols.tx_count.push_back(static_cast<double>(b.tx_count));
        cols.fee_btc.push_back(b.avg_fee.to_btc());
    }
    std::vector<MinerSummary> rows;
    rows.reserve(by_miner.size());
    for (const auto& [miner, cols] : by_miner) {
        MinerSummary row;
        row.miner = miner;
        row.block_count = cols.size_mb.size();
        row.size_mb = stats_of(cols.size_mb);
        row.tx_count = stats_of(cols.tx_count);
        row.avg_fee_btc = stats_of(cols.fee_btc);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::map<std::string, std::size_t> miner_block_counts(const BlockSeries& series) {
    std::map<std::string, std::size_t> counts;
    for (const auto& b : series.blocks()) {
        ++counts[b.miner];
    }
    return counts;
}

std::map<std::string, DayClassCounts> miner_block_counts_by_day(const BlockSeries& series) {
    std::map<std::string, DayClassCounts> counts;
    for (const auto& b : series.blocks()) {
        auto& entry = counts[b.miner];
        if (tag_day_class(b.timestamp) == DayClass::Weekend) {
            ++entry.weekend;
        } else {
            ++entry.working;
        }
    }
    return counts;
}

double quantile_linear(std::span<const double> sorted, double p) {
    if (sorted.empty()) {
        throw Error("empty-sample", "quantile of an empty sample");
    }
    if (p <= 0.0) {
        return sorted.front();
    }
    if (p >= 1.0) {
        return sorted.back();
    }
    const double h = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const double frac = h - static_cast<double>(lo);
    if (lo + 1 >= sorted.size()) {
        return sorted.back();
    }
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

QuartileReport confirmation_by_fee_quartile(std::span<const TxRecord> txs) {
    std::vector<double> fees;
    std::vector<std::pair<double, double>> fee_wait; // (fee BTC, wait seconds)
    for (const auto& tx : txs) {
        if (!tx.confirmed()) {
            continue;
        }
        const double fee = tx.fee.to_btc();
        fees.push_back(fee);
        fee_wait.emplace_back(fee, static_cast<double>(tx.wait_seconds()));
    }
    if (fee_wait.size() < 4) {
        throw Error("too-few-txs", "need at least 4 confirmed transactions");
    }
    std::sort(fees.begin(), fees.end());
    QuartileReport report;
    report.total = fee_wait.size();
    report.q1 = quantile_linear(fees, 0.25);
    report.q2 = quantile_linear(fees, 0.50);
    report.q3 = quantile_linear(fees, 0.75);
    report.degenerate = report.q1 == report.q3;

    std::array<std::vector<double>, 4> waits;
    double total_wait = 0.0;
    for (const auto& [fee, wait] : fee_wait) {
        std::size_t bucket = 3;
        if (fee <= report.q1) {
            bucket = 0;
        } else if (fee <= report.q2) {
            bucket = 1;
        } else if (fee <= report.q3) {
            bucket = 2;
        }
        waits[bucket].push_back(wait);
        total_wait += wait;
    }
    report.overall_mean_wait = total_wait / static_cast<double>(report.total);
    for (std::size_t i = 0; i < 4; ++i) {
        auto& bucket_waits = waits[i];
        report.buckets[i].count = bucket_waits.size();
        if (bucket_waits.empty()) {
            continue;
        }
        report.buckets[i].mean_wait = mean(bucket_waits);
        std::sort(bucket_waits.begin(), bucket_waits.end());
        report.buckets[i].median_wait = quantile_linear(bucket_waits, 0.5);
    }
    return report;
}

} // namespace chainpulse::explore
