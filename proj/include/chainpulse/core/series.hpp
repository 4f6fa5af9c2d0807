// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef CHAINPULSE_CORE_SERIES_HPP
#define CHAINPULSE_CORE_SERIES_HPP

#include "chainpulse/core/types.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace chainpulse {

// Inter-block times of consecutive blocks; element k is
// blocks[k+1].timestamp - blocks[k].timestamp. Negative values are kept.
// Throws Error("empty-series") for fewer than 2 blocks.
std::vector<std::int64_t> derive_interblock_times(std::span<const BlockRecord> blocks);

// Weekend iff the UTC calendar day of the timestamp is Saturday or Sunday.
DayClass tag_day_class(std::int64_t timestamp);

// Report-only consistency check; never mutates or throws.
ValidationReport validate_series(const BlockSeries& series);

} // namespace chainpulse

#endif // CHAINPULSE_CORE_SERIES_HPP
