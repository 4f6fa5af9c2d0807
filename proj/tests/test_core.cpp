// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "chainpulse/core/amount.hpp"
#include "chainpulse/core/series.hpp"
#include "chainpulse/core/types.hpp"
#include "chainpulse/util/error.hpp"
#include "chainpulse/util/rng.hpp"

#include "support/builders.hpp"

#include <doctest.h>

#include <cstdint>
#include <numeric>
#include <vector>

using namespace chainpulse;
using test::block_at;
using test::series_from_timestamps;

namespace {

// 2019-03-07T00:00:00Z, a Thursday.
constexpr std::int64_t kThu = 1551916800;
constexpr std::int64_t kDay = 86400;

} // namespace

TEST_SUITE("core") {

TEST_CASE("interblock times are pairwise timestamp differences") {
    auto s = series_from_timestamps({0, 300, 900});
    CHECK(s.interblock() == std::vector<std::int64_t>{300, 600});

    auto same = series_from_timestamps({100, 100});
    CHECK(same.interblock() == std::vector<std::int64_t>{0});
}

TEST_CASE("negative intervals are preserved and counted") {
    auto s = series_from_timestamps({600, 550, 1200});
    CHECK(s.interblock() == std::vector<std::int64_t>{-50, 650});
    const auto report = validate_series(s);
    CHECK(report.n_negative_intervals == 1);
    CHECK(report.n_schema_errors == 0);
}

TEST_CASE("fewer than two blocks cannot form an interval series") {
    std::vector<BlockRecord> one{block_at(0, 1000)};
    CHECK_THROWS_AS(derive_interblock_times(one), Error);
    CHECK_THROWS_AS(derive_interblock_times(std::vector<BlockRecord>{}), Error);
}

TEST_CASE("interblock times are translation invariant and telescope") {
    Rng rng(7);
    std::vector<std::int64_t> ts;
    std::int64_t t = 50'000;
    for (int i = 0; i < 200; ++i) {
        t += static_cast<std::int64_t>(rng.below(1200)) - 100; // some negative gaps
        ts.push_back(t);
    }
    auto s = series_from_timestamps(ts);

    std::vector<std::int64_t> shifted_ts = ts;
    for (auto& v : shifted_ts) {
        v += 123'456'789;
    }
    auto shifted = series_from_timestamps(shifted_ts);
    CHECK(s.interblock() == shifted.interblock());

    const auto total = std::accumulate(s.interblock().begin(), s.interblock().end(),
                                       std::int64_t{0});
    CHECK(total == ts.back() - ts.front());
}

TEST_CASE("day class matches the UTC calendar") {
    CHECK(tag_day_class(kThu) == DayClass::Working);
    // Saturday 2019-03-09T12:00Z.
    CHECK(tag_day_class(kThu + 2 * kDay + 43200) == DayClass::Weekend);
    // Sunday 2019-03-10T23:59Z.
    CHECK(tag_day_class(kThu + 3 * kDay + 86340) == DayClass::Weekend);
    // Monday 2019-03-11T00:00Z.
    CHECK(tag_day_class(kThu + 4 * kDay) == DayClass::Working);
}

TEST_CASE("day class is 7-day periodic and total") {
    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
        const auto ts = static_cast<std::int64_t>(rng.below(4'000'000'000ULL));
        const auto c = tag_day_class(ts);
        CHECK(tag_day_class(ts + 7 * kDay) == c);
        CHECK((c == DayClass::Working || c == DayClass::Weekend));
    }
}

TEST_CASE("well-formed series validates clean") {
    auto s = series_from_timestamps({0, 600, 1200});
    const auto report = validate_series(s);
    CHECK(report.n_records == 3);
    CHECK(report.n_negative_intervals == 0);
    CHECK(report.n_schema_errors == 0);
    CHECK(report.clean());
}

TEST_CASE("schema violations are counted and named") {
    auto bad = block_at(1, 600);
    bad.size = -5;
    auto s = BlockSeries::from_blocks({block_at(0, 0), bad});
    const auto report = validate_series(s);
    CHECK(report.n_schema_errors >= 1);
    bool mentions_size = false;
    for (const auto& m : report.messages) {
        if (m.find("size") != std::string::npos) {
            mentions_size = true;
        }
    }
    CHECK(mentions_size);
}

TEST_CASE("heights must strictly increase") {
    CHECK_THROWS_AS(BlockSeries::from_blocks({block_at(2, 0), block_at(1, 600)}), Error);
    CHECK_THROWS_AS(BlockSeries::from_blocks({block_at(1, 0), block_at(1, 600)}), Error);
}

TEST_CASE("amounts parse and print exactly") {
    CHECK(Amount::parse_btc("0.00018").sats() == 18000);
    CHECK(Amount::parse_btc("1.2").sats() == 120'000'000);
    CHECK(Amount::parse_btc("0").sats() == 0);
    CHECK(Amount::parse_btc("21000000").sats() == 2'100'000'000'000'000LL);

    CHECK(Amount::from_sats(18000).to_btc_string() == "0.00018");
    CHECK(Amount::from_sats(0).to_btc_string() == "0");
    CHECK(Amount::from_sats(120'000'000).to_btc_string() == "1.2");
    CHECK(Amount::from_sats(-1500).to_btc_string() == "-0.000015");

    CHECK_THROWS_AS(Amount::parse_btc("0.123456789"), Error); // 9 decimals
    CHECK_THROWS_AS(Amount::parse_btc("abc"), Error);
    CHECK_THROWS_AS(Amount::parse_btc(""), Error);
}

TEST_CASE("amount round-trips through its canonical string") {
    Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        const auto sats = static_cast<std::int64_t>(rng.below(5'000'000'000ULL));
        const auto a = Amount::from_sats(sats);
        CHECK(Amount::parse_btc(a.to_btc_string()) == a);
    }
}

TEST_CASE("rng streams are deterministic and seed-sensitive") {
    Rng a(42), b(42), c(43);
    bool all_equal = true;
    bool any_diff = false;
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next_u64();
        all_equal = all_equal && x == b.next_u64();
        any_diff = any_diff || x != c.next_u64();
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("rng samplers have sane first moments") {
    Rng rng(7);
    double sum_u = 0.0, sum_e = 0.0, sum_n = 0.0;
    const int n = 200'000;
    for (int i = 0; i < n; ++i) {
        sum_u += rng.next_double();
        sum_e += rng.exponential(600.0);
        sum_n += rng.normal();
    }
    CHECK(sum_u / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(sum_e / n == doctest::Approx(600.0).epsilon(0.01));
    CHECK(sum_n / n == doctest::Approx(0.0).epsilon(1.0)); // abs tolerance via margin below
    CHECK(std::abs(sum_n / n) < 0.01);
}

} // TEST_SUITE
