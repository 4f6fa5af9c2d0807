// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef CHAINPULSE_SIM_CONFIG_HPP
#define CHAINPULSE_SIM_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace chainpulse::sim {

enum class Selection { FeeRateGreedy, Fifo };

const char* to_string(Selection s);
Selection selection_from_string(const std::string& name);

// Per-pool block building strategy. The knobs that make one pool look
// different from the rest are the size cap, the fee-rate floor and the
// selection rule.
struct MinerPolicy {
    std::string name;
    double hash_share = 0.0;   // fraction of blocks won, in [0,1]
    std::int64_t size_cap = 1'000'000; // bytes
    double min_fee_rate = 0.0; // BTC per byte; transactions below are skipped
    Selection selection = Selection::FeeRateGreedy;
};

// Transaction arrival process: homogeneous Poisson, or a 2-state Markov
// modulated Poisson process for correlated arrivals.
struct ArrivalModel {
    enum class Kind { Poisson, Mmpp2 };

    Kind kind = Kind::Poisson;
    double rate = 0.0; // per second (Poisson)
    double rate_low = 0.0, rate_high = 0.0;       // per second (MMPP2)
    double switch_low_high = 0.0, switch_high_low = 0.0; // per second

    static ArrivalModel poisson(double rate);
    static ArrivalModel mmpp2(double rate_low, double rate_high, double switch_low_high,
                              double switch_high_low);

    void validate() const;
};

// Optional block-interval modulation by an independent 2-state chain: the
// block hazard in a state is factor_state / block_interval_mean. With this
// off, block generation is a plain Poisson process; with slow, deep
// modulation the per-slot count histograms stop looking Poisson at every
// time scale, which is what the cross-scale consistency check detects.
struct BlockModulation {
    double factor_low = 1.0;
    double factor_high = 1.0;
    double switch_low_high = 0.0; // per second
    double switch_high_low = 0.0; // per second
};

struct SimConfig {
    std::uint64_t seed = 1;
    double horizon = 600'000.0;       // seconds
    double block_interval_mean = 600; // seconds
    std::int64_t start_ts = 1'551'916'800; // 2019-03-07T00:00Z
    ArrivalModel tx_arrival = ArrivalModel::poisson(0.75);
    double fee_log_mean = -8.8049;  // lognormal of per-tx fee in BTC
    double fee_log_sd = 1.2;
    double tx_size_log_mean = 7.6009; // lognormal of tx size in bytes (~2000)
    double tx_size_log_sd = 0.05;
    std::vector<MinerPolicy> pools;
    std::optional<BlockModulation> block_modulation;

    // Five fee-rate-greedy pools with 1 MB caps at roughly 0.9x byte load.
    static SimConfig defaults();

    // Throws Error("bad-config") on violated invariants (hash shares must
    // sum to 1 within 1e-9, horizon and interval mean positive, ...).
    void validate() const;

    nlohmann::json to_json() const;
    static SimConfig from_json(const nlohmann::json& j);
};

} // namespace chainpulse::sim

#endif // CHAINPULSE_SIM_CONFIG_HPP
