// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "chainpulse/ingest/rpc_collector.hpp"

#include "chainpulse/core/series.hpp"
#include "chainpulse/util/error.hpp"

#include <httplib.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <thread>
#include <utility>

namespace chainpulse::ingest {

namespace {

class HttpRpcTransport : public RpcTransport {
public:
    explicit HttpRpcTransport(NodeEndpoint endpoint)
        : endpoint_(std::move(endpoint)), client_(endpoint_.url) {
        if (!endpoint_.user.empty()) {
            client_.set_basic_auth(endpoint_.user, endpoint_.pass);
        }
        client_.set_connection_timeout(5, 0);
        client_.set_read_timeout(10, 0);
    }

    nlohmann::json call(const std::string& method, const nlohmann::json& params) override {
        const nlohmann::json request{{"jsonrpc", "1.0"},
                                     {"id", "chainpulse"},
                                     {"method", method},
                                     {"params", params}};
        const auto res = client_.Post("/", request.dump(), "application/json");
        if (!res) {
            throw Error("rpc-transport", "connection failed: " + endpoint_.url);
        }
        if (res->status == 401 || res->status == 403) {
            throw Error("rpc-auth", "node rejected the RPC credentials");
        }
        nlohmann::json body;
        try {
            body = nlohmann::json::parse(res->body);
        } catch (const nlohmann::json::exception&) {
            throw Error("rpc-transport", "malformed RPC response body");
        }
        if (body.contains("error") && !body["error"].is_null()) {
            throw Error("rpc-node", body["error"].dump());
        }
        if (!body.contains("result")) {
            throw Error("rpc-transport", "RPC response carries no result");
        }
        return body["result"];
    }

private:
    NodeEndpoint endpoint_;
    httplib::Client client_;
};

BlockRecord block_from_json(const nlohmann::json& block, const nlohmann::json& mempool,
                            ValidationReport& report) {
    BlockRecord record;
    record.height = block.at("height").get<std::int64_t>();
    record.timestamp = block.at("time").get<std::int64_t>();
    record.size = block.at("size").get<std::int64_t>();
    record.miner = kUnknownMiner; // attribution needs coinbase heuristics
    if (block.contains("tx") && block["tx"].is_array()) {
        record.tx_count = static_cast<std::int64_t>(block["tx"].size());
        Amount fee_sum;
        bool have_fees = !block["tx"].empty();
        for (const auto& tx : block["tx"]) {
            if (tx.is_object() && tx.contains("fee")) {
                fee_sum += Amount::from_btc(tx["fee"].get<double>());
            } else {
                have_fees = false;
            }
        }
        if (have_fees && record.tx_count > 0) {
            record.avg_fee = Amount::from_sats(
                (fee_sum.sats() + record.tx_count / 2) / record.tx_count);
        } else if (record.tx_count > 0) {
            report.messages.push_back("height " + std::to_string(record.height) +
                                      ": per-tx fees unavailable, avg_fee set to 0");
        }
    } else {
        record.tx_count = block.at("nTx").get<std::int64_t>();
    }
    record.mempool.tx_count = mempool.at("size").get<std::int64_t>();
    record.mempool.total_bytes = mempool.at("bytes").get<std::int64_t>();
    if (mempool.contains("total_fee")) {
        record.mempool.total_fee = Amount::from_btc(mempool["total_fee"].get<double>());
    }
    return record;
}

} // namespace

void NodeEndpoint::validate() const {
    if (url.empty()) {
        throw Error("bad-endpoint", "endpoint URL is empty");
    }
    if (!(poll_interval > 0.0)) {
        throw Error("bad-endpoint", "poll interval must be positive");
    }
    if (max_retries < 0) {
        throw Error("bad-endpoint", "retry count must be nonnegative");
    }
}

NodeEndpoint endpoint_from_env(std::string url, double poll_interval) {
    NodeEndpoint ep;
    ep.url = std::move(url);
    ep.poll_interval = poll_interval;
    if (const char* user = std::getenv("CHAINPULSE_RPC_USER")) {
        ep.user = user;
    }
    if (const char* pass = std::getenv("CHAINPULSE_RPC_PASS")) {
        ep.pass = pass;
    }
    return ep;
}

std::unique_ptr<RpcTransport> make_http_transport(const NodeEndpoint& endpoint) {
    endpoint.validate();
    return std::make_unique<HttpRpcTransport>(endpoint);
}

CollectResult collect_from_node(RpcTransport& transport, const NodeEndpoint& endpoint,
                                std::int64_t from_height, std::int64_t to_height) {
    endpoint.validate();
    if (from_height < 0 || to_height < from_height) {
        throw Error("bad-range", "invalid height range");
    }

    CollectResult result;
    auto with_retries = [&](auto&& fn) -> nlohmann::json {
        for (int attempt = 0;; ++attempt) {
            try {
                return fn();
            } catch (const Error& e) {
                if (std::string(e.code()) != "rpc-transport" || attempt >= endpoint.max_retries) {
                    throw;
                }
                ++result.retries;
                result.report.messages.push_back(std::string("retrying after: ") + e.what());
                const auto backoff = endpoint.poll_interval * static_cast<double>(attempt + 1);
                std::this_thread::sleep_for(
                    std::chrono::duration<double>(std::min(backoff, 30.0)));
            }
        }
    };

    const auto tip_json = with_retries([&] { return transport.call("getblockcount", {}); });
    const auto tip = tip_json.get<std::int64_t>();
    if (to_height > tip) {
        throw Error("beyond-tip", "requested height " + std::to_string(to_height) +
                                      " is beyond the node tip " + std::to_string(tip));
    }

    std::vector<BlockRecord> blocks;
    for (std::int64_t h = from_height; h <= to_height; ++h) {
        try {
            const auto hash = with_retries(
                [&] { return transport.call("getblockhash", nlohmann::json::array({h})); });
            const auto block = with_retries([&] {
                return transport.call("getblock", nlohmann::json::array({hash, 2}));
            });
            const auto mempool =
                with_retries([&] { return transport.call("getmempoolinfo", {}); });
            blocks.push_back(block_from_json(block, mempool, result.report));
        } catch (const Error& e) {
            result.aborted = true;
            result.report.messages.push_back("aborted at height " + std::to_string(h) + ": " +
                                             e.what());
            break;
        }
        ++result.report.n_records;
    }
    result.series = BlockSeries::from_blocks(std::move(blocks));
    const auto validation = validate_series(result.series);
    result.report.n_negative_intervals = validation.n_negative_intervals;
    result.report.n_schema_errors = validation.n_schema_errors;
    return result;
}

} // namespace chainpulse::ingest
