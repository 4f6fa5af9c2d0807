// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef CHAINPULSE_CORE_AMOUNT_HPP
#define CHAINPULSE_CORE_AMOUNT_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace chainpulse {

// BTC amount held as integer satoshis (fixed 8-decimal precision). Keeping
// fees integral makes conservation checks and CSV round-trips exact; doubles
// appear only at the statistics/reporting boundary.
class Amount {
public:
    static constexpr std::int64_t kCoin = 100'000'000;

    constexpr Amount() = default;

    static constexpr Amount from_sats(std::int64_t sats) {
        Amount a;
        a.sats_ = sats;
        return a;
    }

    // Nearest-satoshi rounding.
    static Amount from_btc(double btc);

    // Exact decimal parse ("0.00018", "12", "0.1"); at most 8 fractional
    // digits. Throws Error("bad-amount") on malformed input.
    static Amount parse_btc(std::string_view text);

    constexpr std::int64_t sats() const { return sats_; }

    double to_btc() const { return static_cast<double>(sats_) / kCoin; }

    // Canonical decimal form: no trailing zeros, "0" for zero, '-' for
    // negative values. parse_btc(to_btc_string()) round-trips exactly.
    std::string to_btc_string() const;

    constexpr auto operator<=>(const Amount&) const = default;

    constexpr Amount operator+(Amount other) const { return from_sats(sats_ + other.sats_); }
    constexpr Amount operator-(Amount other) const { return from_sats(sats_ - other.sats_); }
    constexpr Amount& operator+=(Amount other) {
        sats_ += other.sats_;
        return *this;
    }
    constexpr Amount& operator-=(Amount other) {
        sats_ -= other.sats_;
        return *this;
    }

private:
    std::int64_t sats_ = 0;
};

} // namespace chainpulse

#endif // CHAINPULSE_CORE_AMOUNT_HPP
