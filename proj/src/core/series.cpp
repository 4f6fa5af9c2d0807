// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "chainpulse/core/series.hpp"

#include "chainpulse/util/error.hpp"

#include <string>
#include <utility>

namespace chainpulse {

const char* to_string(DayClass c) {
    return c == DayClass::Weekend ? "weekend" : "working";
}

BlockSeries BlockSeries::from_blocks(std::vector<BlockRecord> blocks) {
    for (std::size_t i = 1; i < blocks.size(); ++i) {
        if (blocks[i].height <= blocks[i - 1].height) {
            throw Error("bad-series",
                        "block heights must be strictly increasing (offending height " +
                            std::to_string(blocks[i].height) + ")");
        }
    }
    BlockSeries series;
    series.blocks_ = std::move(blocks);
    if (series.blocks_.size() >= 2) {
        series.interblock_ = derive_interblock_times(series.blocks_);
    }
    return series;
}

std::vector<std::int64_t> derive_interblock_times(std::span<const BlockRecord> blocks) {
    if (blocks.size() < 2) {
        throw Error("empty-series", "need at least 2 blocks to derive inter-block times");
    }
    std::vector<std::int64_t> out;
    out.reserve(blocks.size() - 1);
    for (std::size_t i = 1; i < blocks.size(); ++i) {
        out.push_back(blocks[i].timestamp - blocks[i - 1].timestamp);
    }
    return out;
}

DayClass tag_day_class(std::int64_t timestamp) {
    // 1970-01-01 was a Thursday; with Sunday = 0 that is weekday 4.
    std::int64_t days = timestamp / 86400;
    if (timestamp < 0 && timestamp % 86400 != 0) {
        --days; // floor division for pre-epoch timestamps
    }
    const std::int64_t weekday = ((days + 4) % 7 + 7) % 7;
    return (weekday == 0 || weekday == 6) ? DayClass::Weekend : DayClass::Working;
}

ValidationReport validate_series(const BlockSeries& series) {
    ValidationReport report;
    report.n_records = series.size();
    for (const auto& block : series.blocks()) {
        const std::string where = "block " + std::to_string(block.height);
        if (block.size < 0) {
            ++report.n_schema_errors;
            report.messages.push_back(where + ": negative size");
        }
        if (block.tx_count < 0) {
            ++report.n_schema_errors;
            report.messages.push_back(where + ": negative tx_count");
        }
        if (block.avg_fee < Amount{}) {
            ++report.n_schema_errors;
            report.messages.push_back(where + ": negative avg_fee");
        }
        if (block.mempool.tx_count < 0 || block.mempool.total_bytes < 0 ||
            block.mempool.total_fee < Amount{}) {
            ++report.n_schema_errors;
            report.messages.push_back(where + ": negative mempool field");
        }
        if (block.mempool.tx_count == 0 &&
            (block.mempool.total_bytes != 0 || block.mempool.total_fee != Amount{})) {
            ++report.n_schema_errors;
            report.messages.push_back(where + ": empty mempool with nonzero bytes or fee");
        }
    }
    for (std::int64_t gap : series.interblock()) {
        if (gap < 0) {
            ++report.n_negative_intervals;
        }
    }
    if (report.n_negative_intervals > 0) {
        report.messages.push_back(std::to_string(report.n_negative_intervals) +
                                  " negative inter-block interval(s)");
    }
    return report;
}

} // namespace chainpulse
