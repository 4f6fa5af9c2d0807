// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "chainpulse/ingest/csv_io.hpp"

#include "chainpulse/core/series.hpp"
#include "chainpulse/util/error.hpp"
#include "chainpulse/util/text.hpp"

#include <algorithm>
#include <filesystem>
#include <string>
#include <utility>

namespace chainpulse::ingest {

namespace {

std::vector<std::string_view> data_lines(std::string_view content) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < content.size()) {
        std::size_t end = content.find('\n', start);
        if (end == std::string_view::npos) {
            end = content.size();
        }
        std::string_view line = content.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        lines.push_back(line);
        start = end + 1;
    }
    while (!lines.empty() && lines.back().empty()) {
        lines.pop_back();
    }
    return lines;
}

void check_header(std::string_view found, const char* expected, const std::string& origin) {
    if (trim(found) != expected) {
        throw Error("csv-header", origin + ": header mismatch; expected '" + expected +
                                      "' but found '" + std::string(found) + "'");
    }
}

[[noreturn]] void cell_error(const std::string& origin, std::size_t line_no, const char* column,
                             const std::string& why) {
    throw Error("csv-cell", origin + " line " + std::to_string(line_no) + ", column '" + column +
                                "': " + why);
}

std::int64_t cell_i64(std::string_view raw, const std::string& origin, std::size_t line_no,
                      const char* column) {
    try {
        return parse_i64(raw);
    } catch (const Error& e) {
        cell_error(origin, line_no, column, e.what());
    }
}

Amount cell_amount(std::string_view raw, const std::string& origin, std::size_t line_no,
                   const char* column) {
    try {
        return Amount::parse_btc(trim(raw));
    } catch (const Error& e) {
        cell_error(origin, line_no, column, e.what());
    }
}

} // namespace

BlockLoadResult parse_block_csv(const std::string& content, const std::string& origin) {
    const auto lines = data_lines(content);
    if (lines.empty()) {
        throw Error("csv-header", origin + ": file is empty, expected header '" +
                                      std::string(kBlockCsvHeader) + "'");
    }
    check_header(lines[0], kBlockCsvHeader, origin);

    std::vector<BlockRecord> blocks;
    blocks.reserve(lines.size() - 1);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        const auto fields = split(lines[i], ',');
        if (fields.size() != 9) {
            throw Error("csv-cell", origin + " line " + std::to_string(line_no) + ": expected 9 fields, found " +
                                        std::to_string(fields.size()));
        }
        BlockRecord block;
        block.height = cell_i64(fields[0], origin, line_no, "height");
        block.timestamp = cell_i64(fields[1], origin, line_no, "timestamp");
        const auto miner = trim(fields[2]);
        block.miner = miner.empty() ? kUnknownMiner : std::string(miner);
        block.size = cell_i64(fields[3], origin, line_no, "size_bytes");
        block.tx_count = cell_i64(fields[4], origin, line_no, "tx_count");
        block.avg_fee = cell_amount(fields[5], origin, line_no, "avg_fee_btc");
        block.mempool.tx_count = cell_i64(fields[6], origin, line_no, "mempool_tx_count");
        block.mempool.total_bytes = cell_i64(fields[7], origin, line_no, "mempool_bytes");
        block.mempool.total_fee = cell_amount(fields[8], origin, line_no, "mempool_fee_btc");
        blocks.push_back(std::move(block));
    }

    std::stable_sort(blocks.begin(), blocks.end(),
                     [](const BlockRecord& a, const BlockRecord& b) { return a.height < b.height; });

    BlockLoadResult result;
    result.series = BlockSeries::from_blocks(std::move(blocks));
    result.report = validate_series(result.series);
    if (result.series.empty()) {
        result.report.messages.push_back(origin + ": no data rows");
    }
    return result;
}

BlockLoadResult load_block_csv(const std::filesystem::path& path) {
    return parse_block_csv(read_file(path), path.string());
}

TxLoadResult parse_tx_csv(const std::string& content, const std::string& origin) {
    const auto lines = data_lines(content);
    if (lines.empty()) {
        throw Error("csv-header", origin + ": file is empty, expected header '" +
                                      std::string(kTxCsvHeader) + "'");
    }
    check_header(lines[0], kTxCsvHeader, origin);

    TxLoadResult result;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        const auto fields = split(lines[i], ',');
        if (fields.size() != 5) {
            throw Error("csv-cell", origin + " line " + std::to_string(line_no) + ": expected 5 fields, found " +
                                        std::to_string(fields.size()));
        }
        TxRecord tx;
        tx.id = std::string(trim(fields[0]));
        tx.arrival_ts = cell_i64(fields[1], origin, line_no, "arrival_ts");
        const auto confirm = trim(fields[2]);
        if (!confirm.empty()) {
            tx.confirm_ts = cell_i64(confirm, origin, line_no, "confirm_ts");
        }
        tx.fee = cell_amount(fields[3], origin, line_no, "fee_btc");
        tx.size = cell_i64(fields[4], origin, line_no, "size_bytes");

        ++result.report.n_records;
        if (tx.confirm_ts && *tx.confirm_ts < tx.arrival_ts) {
            ++result.report.n_schema_errors;
            result.report.messages.push_back(origin + " line " + std::to_string(line_no) +
                                             ": confirm_ts before arrival_ts, row dropped");
            continue;
        }
        if (tx.size <= 0) {
            ++result.report.n_schema_errors;
            result.report.messages.push_back(origin + " line " + std::to_string(line_no) +
                                             ": non-positive size, row dropped");
            continue;
        }
        if (tx.fee < Amount{}) {
            ++result.report.n_schema_errors;
            result.report.messages.push_back(origin + " line " + std::to_string(line_no) +
                                             ": negative fee, row dropped");
            continue;
        }
        result.txs.push_back(std::move(tx));
    }
    return result;
}

TxLoadResult load_tx_csv(const std::filesystem::path& path) {
    return parse_tx_csv(read_file(path), path.string());
}

std::string to_block_csv(const BlockSeries& series) {
    std::string out = kBlockCsvHeader;
    out += '\n';
    for (const auto& b : series.blocks()) {
        out += std::to_string(b.height);
        out += ',';
        out += std::to_string(b.timestamp);
        out += ',';
        out += b.miner;
        out += ',';
        out += std::to_string(b.size);
        out += ',';
        out += std::to_string(b.tx_count);
        out += ',';
        out += b.avg_fee.to_btc_string();
        out += ',';
        out += std::to_string(b.mempool.tx_count);
        out += ',';
        out += std::to_string(b.mempool.total_bytes);
        out += ',';
        out += b.mempool.total_fee.to_btc_string();
        out += '\n';
    }
    return out;
}

std::string to_tx_csv(const std::vector<TxRecord>& txs) {
    std::string out = kTxCsvHeader;
    out += '\n';
    for (const auto& tx : txs) {
        out += tx.id;
        out += ',';
        out += std::to_string(tx.arrival_ts);
        out += ',';
        if (tx.confirm_ts) {
            out += std::to_string(*tx.confirm_ts);
        }
        out += ',';
        out += tx.fee.to_btc_string();
        out += ',';
        out += std::to_string(tx.size);
        out += '\n';
    }
    return out;
}

void save_block_csv(const BlockSeries& series, const std::filesystem::path& path) {
    atomic_write_file(path, to_block_csv(series));
}

void save_tx_csv(const std::vector<TxRecord>& txs, const std::filesystem::path& path) {
    atomic_write_file(path, to_tx_csv(txs));
}

} // namespace chainpulse::ingest
