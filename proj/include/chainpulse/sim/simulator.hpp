// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef CHAINPULSE_SIM_SIMULATOR_HPP
#define CHAINPULSE_SIM_SIMULATOR_HPP

#include "chainpulse/core/types.hpp"
#include "chainpulse/sim/config.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace chainpulse::sim {

struct SimOutput {
    BlockSeries blocks;
    std::vector<TxRecord> txs; // arrival order; confirmed ones carry confirm_ts
    SimConfig truth;
};

// Transactions the policy packs into the next block, as indices into
// `mempool` in packing order. FeeRateGreedy visits candidates by descending
// fee/size (ties by arrival order), Fifo by arrival order; both skip
// transactions whose fee rate is below the policy floor and stop at the
// first candidate that would push the cumulative size past the cap.
std::vector<std::size_t> pack_block(std::span<const TxRecord> mempool, const MinerPolicy& policy);

// Arrival timestamps in [0, horizon), strictly increasing. Poisson draws
// i.i.d. exponential gaps; MMPP2 modulates the rate with a 2-state chain
// started in the low state.
std::vector<double> sample_arrivals(const ArrivalModel& model, double horizon,
                                    std::uint64_t seed);

// Runs the transaction -> mempool -> block workflow to the horizon.
// Identical configs (seed included) give bit-identical outputs.
SimOutput run_simulation(const SimConfig& config);

// Writes blocks.csv, txs.csv and truth.json into `dir`.
void write_output(const SimOutput& output, const std::filesystem::path& dir);

} // namespace chainpulse::sim

#endif // CHAINPULSE_SIM_SIMULATOR_HPP
