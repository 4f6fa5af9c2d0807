// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef CHAINPULSE_INGEST_RPC_COLLECTOR_HPP
#define CHAINPULSE_INGEST_RPC_COLLECTOR_HPP

#include "chainpulse/core/types.hpp"

#include <cstdint>
#include <memory>
#include <string>

#include <json.hpp>

namespace chainpulse::ingest {

struct NodeEndpoint {
    std::string url;       // http://host:port
    std::string user;      // basic auth; empty = anonymous
    std::string pass;
    double poll_interval = 1.0; // seconds; also the retry backoff base
    int max_retries = 3;

    void validate() const;
};

// Credentials come from CHAINPULSE_RPC_USER / CHAINPULSE_RPC_PASS.
NodeEndpoint endpoint_from_env(std::string url, double poll_interval = 1.0);

// Transport for JSON-RPC calls; swapped out in tests. Implementations throw
// Error("rpc-transport") for transient transport failures and
// Error("rpc-auth") when the node rejects the credentials.
class RpcTransport {
public:
    virtual ~RpcTransport() = default;
    virtual nlohmann::json call(const std::string& method, const nlohmann::json& params) = 0;
};

// JSON-RPC 1.0 over HTTP against a Bitcoin-Core-compatible node.
std::unique_ptr<RpcTransport> make_http_transport(const NodeEndpoint& endpoint);

struct CollectResult {
    BlockSeries series;
    ValidationReport report;
    bool aborted = false; // partial result after exhausted retries
    std::size_t retries = 0;
};

// Fetches [from_height, to_height] via getblockcount / getblockhash /
// getblock / getmempoolinfo. Transient transport errors are retried with
// bounded backoff; after `max_retries` failures on one height the partial
// series is returned with `aborted` set and a summary message. A range
// beyond the tip throws Error("beyond-tip") naming the tip height.
CollectResult collect_from_node(RpcTransport& transport, const NodeEndpoint& endpoint,
                                std::int64_t from_height, std::int64_t to_height);

} // namespace chainpulse::ingest

#endif // CHAINPULSE_INGEST_RPC_COLLECTOR_HPP
