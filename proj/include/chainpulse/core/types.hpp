// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef CHAINPULSE_CORE_TYPES_HPP
#define CHAINPULSE_CORE_TYPES_HPP

#include "chainpulse/core/amount.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace chainpulse {

// Label used for blocks whose miner could not be attributed.
inline constexpr const char* kUnknownMiner = "?";

enum class DayClass { Working, Weekend };

const char* to_string(DayClass c);

// Backlog status attached to each block: what the local node's mempool held
// right before the block confirmed its transactions.
struct MempoolSnapshot {
    std::int64_t tx_count = 0;
    std::int64_t total_bytes = 0;
    Amount total_fee;

    bool operator==(const MempoolSnapshot&) const = default;
};

struct BlockRecord {
    std::int64_t height = 0;
    std::int64_t timestamp = 0; // seconds since Unix epoch, UTC
    std::string miner = kUnknownMiner;
    std::int64_t size = 0; // bytes
    std::int64_t tx_count = 0;
    Amount avg_fee; // per transaction
    MempoolSnapshot mempool;

    bool operator==(const BlockRecord&) const = default;
};

struct TxRecord {
    std::string id;
    std::int64_t arrival_ts = 0;
    std::optional<std::int64_t> confirm_ts;
    Amount fee;
    std::int64_t size = 0; // bytes

    bool confirmed() const { return confirm_ts.has_value(); }
    std::int64_t wait_seconds() const { return *confirm_ts - arrival_ts; }

    bool operator==(const TxRecord&) const = default;
};

struct ValidationReport {
    std::size_t n_records = 0;
    std::size_t n_negative_intervals = 0;
    std::size_t n_schema_errors = 0;
    std::vector<std::string> messages;

    bool clean() const { return n_negative_intervals == 0 && n_schema_errors == 0; }
};

// Blocks ordered by strictly increasing height plus the derived inter-block
// time series interblock[k] = blocks[k+1].timestamp - blocks[k].timestamp.
// Negative entries are possible (miner timestamps are not monotone) and are
// kept; validate_series counts them.
class BlockSeries {
public:
    BlockSeries() = default;

    // Throws Error("bad-series") unless heights are strictly increasing.
    static BlockSeries from_blocks(std::vector<BlockRecord> blocks);

    const std::vector<BlockRecord>& blocks() const { return blocks_; }
    const std::vector<int64_t>& interblock() const { return interblock_; }

    std::size_t size() const { return blocks_.size(); }
    bool empty() const { return blocks_.empty(); }

    bool operator==(const BlockSeries&) const = default;

private:
    std::vector<BlockRecord> blocks_;
    std::vector<std::int64_t> interblock_;
};

} // namespace chainpulse

#endif // CHAINPULSE_CORE_TYPES_HPP
