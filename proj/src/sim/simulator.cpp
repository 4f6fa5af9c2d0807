// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "chainpulse/sim/simulator.hpp"

#include "chainpulse/ingest/csv_io.hpp"
#include "chainpulse/util/error.hpp"
#include "chainpulse/util/rng.hpp"
#include "chainpulse/util/text.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace chainpulse::sim {

namespace {

constexpr std::uint64_t kArrivalStream = 1;
constexpr std::uint64_t kTxAttrStream = 2;
constexpr std::uint64_t kBlockTimeStream = 3;
constexpr std::uint64_t kWinnerStream = 4;
constexpr std::uint64_t kModulationStream = 5;

double fee_rate_btc_per_byte(const TxRecord& tx) {
    return tx.fee.to_btc() / static_cast<double>(tx.size);
}

// Packing order over `pending` (indices into `txs`), shared by the public
// pack_block and the simulator's zero-copy path. `rates` caches
// fee_rate_btc_per_byte per tx; recomputing it inside the sort comparator
// dominates the whole simulation under a standing backlog.
std::vector<std::size_t> pack_pending(const std::vector<TxRecord>& txs,
                                      std::span<const double> rates,
                                      std::span<const std::size_t> pending,
                                      const MinerPolicy& policy) {
    std::vector<std::size_t> order(pending.begin(), pending.end());
    if (policy.selection == Selection::FeeRateGreedy) {
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return rates[a] > rates[b];
        });
    }
    std::vector<std::size_t> selected;
    std::int64_t cumulative = 0;
    for (std::size_t idx : order) {
        const TxRecord& tx = txs[idx];
        if (rates[idx] < policy.min_fee_rate) {
            continue;
        }
        if (cumulative + tx.size > policy.size_cap) {
            break;
        }
        cumulative += tx.size;
        selected.push_back(idx);
    }
    return selected;
}

// Times of a 2-state modulated Poisson stream up to the horizon. With
// rate_low == rate_high this is a plain Poisson process.
class TwoStateChain {
public:
    TwoStateChain(double switch_low_high, double switch_high_low, Rng rng)
        : switch_rates_{switch_low_high, switch_high_low}, rng_(std::move(rng)) {
        next_switch_ = switch_rates_[0] > 0.0 ? rng_.exponential(1.0 / switch_rates_[0])
                                              : std::numeric_limits<double>::infinity();
    }

    // Next event of a Poisson stream whose rate is rates[state]; exact via
    // memorylessness (the pending gap is re-drawn after each state switch).
    double next_event(double t, const double rates[2]) {
        while (true) {
            const double gap = rng_.exponential(1.0 / rates[state_]);
            if (t + gap < next_switch_) {
                return t + gap;
            }
            t = next_switch_;
            state_ = 1 - state_;
            next_switch_ = t + rng_.exponential(1.0 / switch_rates_[state_]);
        }
    }

private:
    int state_ = 0; // 0 = low, 1 = high
    double switch_rates_[2];
    double next_switch_ = 0.0;
    Rng rng_;
};

} // namespace

std::vector<std::size_t> pack_block(std::span<const TxRecord> mempool,
                                    const MinerPolicy& policy) {
    std::vector<TxRecord> txs(mempool.begin(), mempool.end());
    std::vector<double> rates;
    rates.reserve(txs.size());
    for (const auto& tx : txs) {
        rates.push_back(fee_rate_btc_per_byte(tx));
    }
    std::vector<std::size_t> pending(mempool.size());
    for (std::size_t i = 0; i < pending.size(); ++i) {
        pending[i] = i;
    }
    return pack_pending(txs, rates, pending, policy);
}

std::vector<double> sample_arrivals(const ArrivalModel& model, double horizon,
                                    std::uint64_t seed) {
    model.validate();
    if (!(horizon > 0.0)) {
        throw Error("bad-config", "horizon must be positive");
    }
    std::vector<double> arrivals;
    Rng rng(seed);
    if (model.kind == ArrivalModel::Kind::Poisson) {
        arrivals.reserve(static_cast<std::size_t>(model.rate * horizon * 1.01) + 16);
        double t = rng.exponential(1.0 / model.rate);
        while (t < horizon) {
            arrivals.push_back(t);
            t += rng.exponential(1.0 / model.rate);
        }
        return arrivals;
    }
    const double rates[2] = {model.rate_low, model.rate_high};
    TwoStateChain chain(model.switch_low_high, model.switch_high_low, rng.substream(1));
    double t = 0.0;
    while (true) {
        t = chain.next_event(t, rates);
        if (t >= horizon) {
            break;
        }
        arrivals.push_back(t);
    }
    return arrivals;
}

SimOutput run_simulation(const SimConfig& config) {
    config.validate();

    const auto arrivals = sample_arrivals(config.tx_arrival, config.horizon,
                                          derive_seed(config.seed, kArrivalStream));
    Rng tx_attr_rng(derive_seed(config.seed, kTxAttrStream));
    Rng block_time_rng(derive_seed(config.seed, kBlockTimeStream));
    Rng winner_rng(derive_seed(config.seed, kWinnerStream));

    SimOutput out;
    out.truth = config;
    out.txs.reserve(arrivals.size());

    std::vector<double> shares;
    shares.reserve(config.pools.size());
    for (const auto& pool : config.pools) {
        shares.push_back(pool.hash_share);
    }

    // Block times, optionally hazard-modulated by an independent chain.
    std::vector<double> block_times;
    if (config.block_modulation) {
        const auto& mod = *config.block_modulation;
        const double rates[2] = {mod.factor_low / config.block_interval_mean,
                                 mod.factor_high / config.block_interval_mean};
        TwoStateChain chain(mod.switch_low_high, mod.switch_high_low,
                            Rng(derive_seed(config.seed, kModulationStream)));
        double t = 0.0;
        while (true) {
            t = chain.next_event(t, rates);
            if (t >= config.horizon) {
                break;
            }
            block_times.push_back(t);
        }
    } else {
        double t = block_time_rng.exponential(config.block_interval_mean);
        while (t < config.horizon) {
            block_times.push_back(t);
            t += block_time_rng.exponential(config.block_interval_mean);
        }
    }

    std::vector<BlockRecord> blocks;
    blocks.reserve(block_times.size());

    std::vector<std::size_t> pending;
    std::vector<double> rates; // fee rate per tx, parallel to out.txs
    rates.reserve(arrivals.size());
    std::int64_t pending_bytes = 0;
    Amount pending_fee;

    std::size_t next_arrival = 0;
    auto admit_arrivals_until = [&](double t) {
        while (next_arrival < arrivals.size() && arrivals[next_arrival] <= t) {
            TxRecord tx;
            tx.id = "t" + std::to_string(out.txs.size());
            tx.arrival_ts = config.start_ts + static_cast<std::int64_t>(arrivals[next_arrival]);
            tx.fee = Amount::from_btc(tx_attr_rng.lognormal(config.fee_log_mean, config.fee_log_sd));
            tx.size = std::max<std::int64_t>(
                1, static_cast<std::int64_t>(
                       std::llround(tx_attr_rng.lognormal(config.tx_size_log_mean,
                                                          config.tx_size_log_sd))));
            pending.push_back(out.txs.size());
            pending_bytes += tx.size;
            pending_fee += tx.fee;
            rates.push_back(fee_rate_btc_per_byte(tx));
            out.txs.push_back(std::move(tx));
            ++next_arrival;
        }
    };

    for (std::size_t b = 0; b < block_times.size(); ++b) {
        const double tb = block_times[b];
        admit_arrivals_until(tb);

        const std::size_t winner = winner_rng.categorical(shares);
        const MinerPolicy& policy = config.pools[winner];

        BlockRecord block;
        block.height = static_cast<std::int64_t>(b);
        block.timestamp = config.start_ts + static_cast<std::int64_t>(tb);
        block.miner = policy.name;
        // Snapshot before the packed transactions are removed.
        block.mempool.tx_count = static_cast<std::int64_t>(pending.size());
        block.mempool.total_bytes = pending_bytes;
        block.mempool.total_fee = pending_fee;

        const auto selected = pack_pending(out.txs, rates, pending, policy);
        Amount fee_sum;
        std::int64_t byte_sum = 0;
        for (std::size_t idx : selected) {
            TxRecord& tx = out.txs[idx];
            tx.confirm_ts = block.timestamp;
            fee_sum += tx.fee;
            byte_sum += tx.size;
        }
        block.tx_count = static_cast<std::int64_t>(selected.size());
        block.size = byte_sum;
        block.avg_fee = selected.empty()
                            ? Amount{}
                            : Amount::from_sats((fee_sum.sats() +
                                                 static_cast<std::int64_t>(selected.size()) / 2) /
                                                static_cast<std::int64_t>(selected.size()));
        pending_bytes -= byte_sum;
        pending_fee -= fee_sum;

        // Drop packed transactions, preserving arrival order of the rest.
        if (!selected.empty()) {
            std::vector<std::size_t> dropped(selected.begin(), selected.end());
            std::sort(dropped.begin(), dropped.end());
            std::vector<std::size_t> rest;
            rest.reserve(pending.size() - dropped.size());
            std::size_t d = 0;
            for (std::size_t idx : pending) {
                if (d < dropped.size() && dropped[d] == idx) {
                    ++d;
                    continue;
                }
                rest.push_back(idx);
            }
            pending.swap(rest);
        }
        blocks.push_back(std::move(block));
    }

    out.blocks = BlockSeries::from_blocks(std::move(blocks));
    return out;
}

void write_output(const SimOutput& output, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    ingest::save_block_csv(output.blocks, dir / "blocks.csv");
    ingest::save_tx_csv(output.txs, dir / "txs.csv");
    atomic_write_file(dir / "truth.json", output.truth.to_json().dump(2) + "\n");
}

} // namespace chainpulse::sim
