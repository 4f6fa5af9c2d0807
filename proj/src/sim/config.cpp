// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "chainpulse/sim/config.hpp"

#include "chainpulse/util/error.hpp"

#include <cmath>

namespace chainpulse::sim {

const char* to_string(Selection s) {
    return s == Selection::Fifo ? "fifo" : "fee_rate_greedy";
}

Selection selection_from_string(const std::string& name) {
    if (name == "fifo") {
        return Selection::Fifo;
    }
    if (name == "fee_rate_greedy") {
        return Selection::FeeRateGreedy;
    }
    throw Error("bad-config", "unknown selection policy: '" + name + "'");
}

ArrivalModel ArrivalModel::poisson(double rate) {
    ArrivalModel m;
    m.kind = Kind::Poisson;
    m.rate = rate;
    return m;
}

ArrivalModel ArrivalModel::mmpp2(double rate_low, double rate_high, double switch_low_high,
                                 double switch_high_low) {
    ArrivalModel m;
    m.kind = Kind::Mmpp2;
    m.rate_low = rate_low;
    m.rate_high = rate_high;
    m.switch_low_high = switch_low_high;
    m.switch_high_low = switch_high_low;
    return m;
}

void ArrivalModel::validate() const {
    if (kind == Kind::Poisson) {
        if (!(rate > 0.0)) {
            throw Error("bad-config", "Poisson arrival rate must be positive");
        }
        return;
    }
    if (!(rate_low > 0.0) || !(rate_high > 0.0) || !(switch_low_high > 0.0) ||
        !(switch_high_low > 0.0)) {
        throw Error("bad-config", "all MMPP2 rates must be positive");
    }
}

SimConfig SimConfig::defaults() {
    SimConfig config;
    config.pools = {
        {"?", 0.24, 1'000'000, 0.0, Selection::FeeRateGreedy},
        {"AntPool", 0.18, 1'000'000, 0.0, Selection::FeeRateGreedy},
        {"BTC.com", 0.20, 1'000'000, 0.0, Selection::FeeRateGreedy},
        {"F2Pool", 0.20, 1'000'000, 0.0, Selection::FeeRateGreedy},
        {"Poolin", 0.18, 1'000'000, 0.0, Selection::FeeRateGreedy},
    };
    return config;
}

void SimConfig::validate() const {
    if (!(horizon > 0.0)) {
        throw Error("bad-config", "horizon must be positive");
    }
    if (!(block_interval_mean > 0.0)) {
        throw Error("bad-config", "block_interval_mean must be positive");
    }
    tx_arrival.validate();
    if (pools.empty()) {
        throw Error("bad-config", "at least one mining pool is required");
    }
    double share_sum = 0.0;
    for (const auto& pool : pools) {
        if (!(pool.hash_share >= 0.0 && pool.hash_share <= 1.0)) {
            throw Error("bad-config", "hash share of '" + pool.name + "' must be in [0,1]");
        }
        if (pool.size_cap < 0) {
            throw Error("bad-config", "size cap of '" + pool.name + "' must be nonnegative");
        }
        if (pool.min_fee_rate < 0.0) {
            throw Error("bad-config", "fee-rate floor of '" + pool.name + "' must be nonnegative");
        }
        share_sum += pool.hash_share;
    }
    if (std::abs(share_sum - 1.0) > 1e-9) {
        throw Error("bad-config", "pool hash shares must sum to 1");
    }
    if (!(fee_log_sd >= 0.0) || !(tx_size_log_sd >= 0.0)) {
        throw Error("bad-config", "lognormal sd parameters must be nonnegative");
    }
    if (block_modulation) {
        const auto& m = *block_modulation;
        if (!(m.factor_low > 0.0) || !(m.factor_high > 0.0) || !(m.switch_low_high > 0.0) ||
            !(m.switch_high_low > 0.0)) {
            throw Error("bad-config", "block modulation factors and switch rates must be positive");
        }
    }
}

nlohmann::json SimConfig::to_json() const {
    nlohmann::json j;
    j["seed"] = seed;
    j["horizon"] = horizon;
    j["block_interval_mean"] = block_interval_mean;
    j["start_ts"] = start_ts;
    if (tx_arrival.kind == ArrivalModel::Kind::Poisson) {
        j["tx_arrival"] = {{"kind", "poisson"}, {"rate", tx_arrival.rate}};
    } else {
        j["tx_arrival"] = {{"kind", "mmpp2"},
                           {"rate_low", tx_arrival.rate_low},
                           {"rate_high", tx_arrival.rate_high},
                           {"switch_low_high", tx_arrival.switch_low_high},
                           {"switch_high_low", tx_arrival.switch_high_low}};
    }
    j["fee_dist"] = {{"log_mean", fee_log_mean}, {"log_sd", fee_log_sd}};
    j["tx_size_dist"] = {{"log_mean", tx_size_log_mean}, {"log_sd", tx_size_log_sd}};
    j["pools"] = nlohmann::json::array();
    for (const auto& pool : pools) {
        j["pools"].push_back({{"name", pool.name},
                              {"hash_share", pool.hash_share},
                              {"size_cap", pool.size_cap},
                              {"min_fee_rate", pool.min_fee_rate},
                              {"selection", to_string(pool.selection)}});
    }
    if (block_modulation) {
        j["block_modulation"] = {{"factor_low", block_modulation->factor_low},
                                 {"factor_high", block_modulation->factor_high},
                                 {"switch_low_high", block_modulation->switch_low_high},
                                 {"switch_high_low", block_modulation->switch_high_low}};
    }
    return j;
}

SimConfig SimConfig::from_json(const nlohmann::json& j) {
    SimConfig config;
    config.seed = j.at("seed").get<std::uint64_t>();
    config.horizon = j.at("horizon").get<double>();
    config.block_interval_mean = j.at("block_interval_mean").get<double>();
    config.start_ts = j.at("start_ts").get<std::int64_t>();
    const auto& arrival = j.at("tx_arrival");
    const auto kind = arrival.at("kind").get<std::string>();
    if (kind == "poisson") {
        config.tx_arrival = ArrivalModel::poisson(arrival.at("rate").get<double>());
    } else if (kind == "mmpp2") {
        config.tx_arrival = ArrivalModel::mmpp2(arrival.at("rate_low").get<double>(),
                                                arrival.at("rate_high").get<double>(),
                                                arrival.at("switch_low_high").get<double>(),
                                                arrival.at("switch_high_low").get<double>());
    } else {
        throw Error("bad-config", "unknown arrival kind: '" + kind + "'");
    }
    config.fee_log_mean = j.at("fee_dist").at("log_mean").get<double>();
    config.fee_log_sd = j.at("fee_dist").at("log_sd").get<double>();
    config.tx_size_log_mean = j.at("tx_size_dist").at("log_mean").get<double>();
    config.tx_size_log_sd = j.at("tx_size_dist").at("log_sd").get<double>();
    config.pools.clear();
    for (const auto& p : j.at("pools")) {
        MinerPolicy pool;
        pool.name = p.at("name").get<std::string>();
        pool.hash_share = p.at("hash_share").get<double>();
        pool.size_cap = p.at("size_cap").get<std::int64_t>();
        pool.min_fee_rate = p.at("min_fee_rate").get<double>();
        pool.selection = selection_from_string(p.at("selection").get<std::string>());
        config.pools.push_back(std::move(pool));
    }
    if (j.contains("block_modulation")) {
        BlockModulation m;
        const auto& bm = j.at("block_modulation");
        m.factor_low = bm.at("factor_low").get<double>();
        m.factor_high = bm.at("factor_high").get<double>();
        m.switch_low_high = bm.at("switch_low_high").get<double>();
        m.switch_high_low = bm.at("switch_high_low").get<double>();
        config.block_modulation = m;
    }
    return config;
}

} // namespace chainpulse::sim
