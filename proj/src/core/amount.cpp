// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "chainpulse/core/amount.hpp"

#include "chainpulse/util/error.hpp"

#include <cmath>
#include <cstdlib>

namespace chainpulse {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (c < '0' || c > '9') {
            return false;
        }
    }
    return true;
}

} // namespace

Amount Amount::from_btc(double btc) {
    if (!std::isfinite(btc)) {
        throw Error("bad-amount", "non-finite BTC amount");
    }
    return from_sats(static_cast<std::int64_t>(std::llround(btc * kCoin)));
}

Amount Amount::parse_btc(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    const auto point = s.find('.');
    std::string_view whole = point == std::string_view::npos ? s : s.substr(0, point);
    std::string_view frac = point == std::string_view::npos ? std::string_view{} : s.substr(point + 1);
    if (whole.empty() && frac.empty()) {
        throw Error("bad-amount", "empty BTC amount: '" + std::string(text) + "'");
    }
    if (whole.empty()) {
        whole = "0";
    }
    if (!all_digits(whole) || (point != std::string_view::npos && !all_digits(frac))) {
        throw Error("bad-amount", "malformed BTC amount: '" + std::string(text) + "'");
    }
    if (frac.size() > 8) {
        throw Error("bad-amount",
                    "more than 8 decimal places in BTC amount: '" + std::string(text) + "'");
    }
    std::int64_t sats = 0;
    for (char c : whole) {
        sats = sats * 10 + (c - '0');
        if (sats > INT64_MAX / kCoin) {
            throw Error("bad-amount", "BTC amount out of range: '" + std::string(text) + "'");
        }
    }
    sats *= kCoin;
    std::int64_t frac_sats = 0;
    for (char c : frac) {
        frac_sats = frac_sats * 10 + (c - '0');
    }
    for (std::size_t i = frac.size(); i < 8; ++i) {
        frac_sats *= 10;
    }
    sats += frac_sats;
    return from_sats(negative ? -sats : sats);
}

std::string Amount::to_btc_string() const {
    std::int64_t v = sats_;
    std::string sign;
    if (v < 0) {
        sign = "-";
        v = -v;
    }
    const std::int64_t whole = v / kCoin;
    std::int64_t frac = v % kCoin;
    std::string out = sign + std::to_string(whole);
    if (frac != 0) {
        char digits[9];
        for (int i = 7; i >= 0; --i) {
            digits[i] = static_cast<char>('0' + frac % 10);
            frac /= 10;
        }
        digits[8] = '\0';
        std::string_view fstr(digits, 8);
        while (!fstr.empty() && fstr.back() == '0') {
            fstr.remove_suffix(1);
        }
        out += '.';
        out += fstr;
    }
    return out;
}

} // namespace chainpulse
