// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef CHAINPULSE_INGEST_CSV_IO_HPP
#define CHAINPULSE_INGEST_CSV_IO_HPP

#include "chainpulse/core/types.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace chainpulse::ingest {

// Flat-file schema. Column order is fixed; fees are decimal BTC with '.'
// separator; line endings are LF; no quoting (field values must not contain
// commas or newlines).
inline constexpr const char* kBlockCsvHeader =
    "height,timestamp,miner,size_bytes,tx_count,avg_fee_btc,"
    "mempool_tx_count,mempool_bytes,mempool_fee_btc";
inline constexpr const char* kTxCsvHeader = "id,arrival_ts,confirm_ts,fee_btc,size_bytes";

struct BlockLoadResult {
    BlockSeries series;
    ValidationReport report;
};

struct TxLoadResult {
    std::vector<TxRecord> txs;
    ValidationReport report;
};

// Loads a block CSV. Rows are sorted by height; an empty miner field becomes
// "?". Throws Error("missing-file"), Error("csv-header") with expected vs
// found, or Error("csv-cell") naming line and column on unparseable cells.
BlockLoadResult load_block_csv(const std::filesystem::path& path);
BlockLoadResult parse_block_csv(const std::string& content, const std::string& origin);

// Loads a transaction CSV in file order. A blank confirm_ts means
// unconfirmed; rows with confirm_ts < arrival_ts are dropped and counted in
// the report.
TxLoadResult load_tx_csv(const std::filesystem::path& path);
TxLoadResult parse_tx_csv(const std::string& content, const std::string& origin);

// Canonical serialization: load(save(x)) == x and save(load(f)) is
// byte-identical to a canonically formatted f.
std::string to_block_csv(const BlockSeries& series);
std::string to_tx_csv(const std::vector<TxRecord>& txs);

void save_block_csv(const BlockSeries& series, const std::filesystem::path& path);
void save_tx_csv(const std::vector<TxRecord>& txs, const std::filesystem::path& path);

} // namespace chainpulse::ingest

#endif // CHAINPULSE_INGEST_CSV_IO_HPP
