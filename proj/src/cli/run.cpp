// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "chainpulse/cli/run.hpp"

#include "chainpulse/cli/plot.hpp"
#include "chainpulse/cli/table.hpp"
#include "chainpulse/classify/features.hpp"
#include "chainpulse/classify/metrics.hpp"
#include "chainpulse/classify/model.hpp"
#include "chainpulse/core/series.hpp"
#include "chainpulse/explore/acf.hpp"
#include "chainpulse/explore/ecdf.hpp"
#include "chainpulse/explore/fits.hpp"
#include "chainpulse/explore/summaries.hpp"
#include "chainpulse/forecast/arima.hpp"
#include "chainpulse/forecast/evaluate.hpp"
#include "chainpulse/forecast/narnet.hpp"
#include "chainpulse/ingest/csv_io.hpp"
#include "chainpulse/ingest/rpc_collector.hpp"
#include "chainpulse/ingest/split.hpp"
#include "chainpulse/sim/simulator.hpp"
#include "chainpulse/util/error.hpp"
#include "chainpulse/util/text.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>

namespace chainpulse::cli {

namespace {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// shared helpers
// ---------------------------------------------------------------------------

BlockSeries load_series(const std::string& path, const std::string& day_class) {
    auto loaded = ingest::load_block_csv(path);
    if (day_class == "working") {
        return ingest::filter_day_class(loaded.series, DayClass::Working);
    }
    if (day_class == "weekend") {
        return ingest::filter_day_class(loaded.series, DayClass::Weekend);
    }
    return std::move(loaded.series);
}

std::vector<double> attribute_column(const BlockSeries& series, const std::string& attr) {
    std::vector<double> out;
    if (attr == "interblock") {
        for (auto gap : series.interblock()) {
            out.push_back(static_cast<double>(gap));
        }
        return out;
    }
    for (const auto& b : series.blocks()) {
        if (attr == "size") {
            out.push_back(static_cast<double>(b.size) / 1e6); // MB, reporting units
        } else if (attr == "tx_count") {
            out.push_back(static_cast<double>(b.tx_count));
        } else if (attr == "avg_fee") {
            out.push_back(b.avg_fee.to_btc());
        } else {
            throw Error("bad-attr", "unknown attribute: '" + attr + "'");
        }
    }
    return out;
}

const char* attribute_unit(const std::string& attr) {
    if (attr == "size") {
        return "size_mb";
    }
    if (attr == "tx_count") {
        return "tx_count";
    }
    if (attr == "avg_fee") {
        return "avg_fee_btc";
    }
    return "interblock_s";
}

void write_table(const Table& table, const fs::path& path) {
    atomic_write_file(path, table.to_csv());
}

void write_plot(const Table& table, PlotKind kind, const fs::path& path) {
    atomic_write_file(path, render_plot(table, kind));
}

std::string d2s(double v) {
    return format_double(v);
}

// Exogenous columns (Td, f, ms) из the block series, pre-lagged so row i is
// known before step i; one extra trailing row supports one-step forecasts.
forecast::ExogMatrix block_exog(const BlockSeries& series, std::size_t from,
                                std::size_t count) {
    forecast::ExogMatrix exog;
    exog.names = {"interblock_s", "avg_fee_btc", "mempool_bytes"};
    exog.cols.assign(3, {});
    const auto& blocks = series.blocks();
    const auto& gaps = series.interblock();
    auto value = [&](std::size_t idx, std::size_t col) {
        // Values observed together with block idx.
        switch (col) {
        case 0:
            return idx == 0 ? 0.0 : static_cast<double>(gaps[idx - 1]);
        case 1:
            return blocks[idx].avg_fee.to_btc();
        default:
            return static_cast<double>(blocks[idx].mempool.total_bytes);
        }
    };
    for (std::size_t col = 0; col < 3; ++col) {
        auto& column = exog.cols[col];
        for (std::size_t i = 0; i <= count; ++i) {
            const std::size_t idx = from + i;
            // Pre-lagged row: what was known *before* block `idx`.
            column.push_back(idx == 0 ? 0.0 : value(idx - 1, col));
        }
    }
    return exog;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateArgs {
    std::uint64_t seed = 1;
    double horizon = 600'000.0;
    double block_interval_mean = 600.0;
    double arrival_rate = 0.75;
    std::string arrival_mmpp; // "lo,hi,s_lh,s_hl"
    std::string modulate;     // "f_lo,f_hi,s_lh,s_hl"
    std::string pools_json;
    double fee_log_mean = -8.8049;
    double fee_log_sd = 1.2;
    double tx_size_log_mean = 7.6009;
    double tx_size_log_sd = 0.05;
    std::string out;
};

std::vector<double> parse_quadruple(const std::string& text, const char* what) {
    const auto parts = split(text, ',');
    if (parts.size() != 4) {
        throw Error("bad-flag", std::string(what) + " expects four comma-separated numbers");
    }
    std::vector<double> out;
    for (auto piece : parts) {
        out.push_back(parse_double(piece));
    }
    return out;
}

int cmd_simulate(const SimulateArgs& args) {
    sim::SimConfig config = sim::SimConfig::defaults();
    config.seed = args.seed;
    config.horizon = args.horizon;
    config.block_interval_mean = args.block_interval_mean;
    config.fee_log_mean = args.fee_log_mean;
    config.fee_log_sd = args.fee_log_sd;
    config.tx_size_log_mean = args.tx_size_log_mean;
    config.tx_size_log_sd = args.tx_size_log_sd;
    if (!args.arrival_mmpp.empty()) {
        const auto v = parse_quadruple(args.arrival_mmpp, "--arrival-mmpp");
        config.tx_arrival = sim::ArrivalModel::mmpp2(v[0], v[1], v[2], v[3]);
    } else {
        config.tx_arrival = sim::ArrivalModel::poisson(args.arrival_rate);
    }
    if (!args.modulate.empty()) {
        const auto v = parse_quadruple(args.modulate, "--modulate");
        sim::BlockModulation mod;
        mod.factor_low = v[0];
        mod.factor_high = v[1];
        mod.switch_low_high = v[2];
        mod.switch_high_low = v[3];
        config.block_modulation = mod;
    }
    if (!args.pools_json.empty()) {
        const auto doc = nlohmann::json::parse(read_file(args.pools_json));
        config.pools.clear();
        for (const auto& p : doc) {
            sim::MinerPolicy pool;
            pool.name = p.at("name").get<std::string>();
            pool.hash_share = p.at("hash_share").get<double>();
            pool.size_cap = p.value("size_cap", std::int64_t{1'000'000});
            pool.min_fee_rate = p.value("min_fee_rate", 0.0);
            pool.selection = sim::selection_from_string(p.value("selection", "fee_rate_greedy"));
            config.pools.push_back(std::move(pool));
        }
    }
    const auto output = sim::run_simulation(config);
    sim::write_output(output, args.out);
    std::cout << "simulated " << output.blocks.size() << " blocks, " << output.txs.size()
              << " transactions -> " << args.out << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// ingest
// ---------------------------------------------------------------------------

int cmd_ingest_validate(const std::string& in, const std::string& txs) {
    const auto loaded = ingest::load_block_csv(in);
    const auto& report = loaded.report;
    std::cout << "records: " << report.n_records
              << "\nnegative_intervals: " << report.n_negative_intervals
              << "\nschema_errors: " << report.n_schema_errors << "\n";
    for (const auto& m : report.messages) {
        std::cout << "note: " << m << "\n";
    }
    if (!txs.empty()) {
        const auto tx_loaded = ingest::load_tx_csv(txs);
        std::cout << "tx_records: " << tx_loaded.report.n_records
                  << "\ntx_rows_dropped: " << tx_loaded.report.n_schema_errors << "\n";
        for (const auto& m : tx_loaded.report.messages) {
            std::cout << "note: " << m << "\n";
        }
    }
    return 0;
}

int cmd_ingest_split(const std::string& in, const std::string& fracs, const std::string& out) {
    const auto parts = split(fracs, ',');
    if (parts.size() != 3) {
        throw Error("bad-flag", "--fracs expects train,test,validation");
    }
    ingest::SplitSpec spec{parse_double(parts[0]), parse_double(parts[1]),
                           parse_double(parts[2])};
    const auto loaded = ingest::load_block_csv(in);
    const auto result = ingest::split_dataset(loaded.series, spec);
    fs::create_directories(out);
    ingest::save_block_csv(result.train, fs::path(out) / "train.csv");
    ingest::save_block_csv(result.test, fs::path(out) / "test.csv");
    ingest::save_block_csv(result.validation, fs::path(out) / "validation.csv");
    std::cout << "train: " << result.train.size() << "\ntest: " << result.test.size()
              << "\nvalidation: " << result.validation.size() << "\n";
    return 0;
}

int cmd_ingest_collect(const std::string& url, std::int64_t from, std::int64_t to,
                       double poll, const std::string& out) {
    auto endpoint = ingest::endpoint_from_env(url, poll);
    const auto transport = ingest::make_http_transport(endpoint);
    const auto result = ingest::collect_from_node(*transport, endpoint, from, to);
    ingest::save_block_csv(result.series, out);
    std::cout << "collected " << result.series.size() << " blocks";
    if (result.retries > 0) {
        std::cout << " (" << result.retries << " retries)";
    }
    std::cout << (result.aborted ? ", aborted early" : "") << " -> " << out << "\n";
    for (const auto& m : result.report.messages) {
        std::cout << "note: " << m << "\n";
    }
    return result.aborted ? 1 : 0;
}

// ---------------------------------------------------------------------------
// explore
// ---------------------------------------------------------------------------

struct ExploreArgs {
    std::string in;
    std::string txs;
    std::string stat;
    std::string attr = "size";
    std::string day_class = "all";
    std::size_t max_lag = 20;
    double slot_min = 100.0;
    double slot_min_b = 1000.0;
    double tolerance = 0.05;
    std::size_t top_k = 8;
    std::string out = ".";
};

std::string explore_stem(const ExploreArgs& args) {
    std::string stem = args.stat;
    if (args.stat == "ecdf" || args.stat == "acf" || args.stat == "pacf" ||
        args.stat == "expfit") {
        stem += "_" + args.attr;
    }
    if (args.day_class != "all") {
        stem += "_" + args.day_class;
    }
    return stem;
}

int cmd_explore(const ExploreArgs& args) {
    fs::create_directories(args.out);
    const fs::path out_dir(args.out);
    const std::string stem = explore_stem(args);

    if (args.stat == "quartiles") {
        if (args.txs.empty()) {
            throw Error("bad-flag", "--stat quartiles needs --txs");
        }
        const auto loaded = ingest::load_tx_csv(args.txs);
        const auto report = explore::confirmation_by_fee_quartile(loaded.txs);
        Table table;
        table.columns = {"bucket", "fee_lo_btc", "fee_hi_btc", "count", "mean_wait_s",
                         "median_wait_s"};
        const double edges[] = {0.0, report.q1, report.q2, report.q3};
        for (std::size_t b = 0; b < 4; ++b) {
            table.add_row({"Q" + std::to_string(b + 1), d2s(edges[b]),
                           b == 3 ? "inf" : d2s(edges[b + 1]),
                           std::to_string(report.buckets[b].count),
                           d2s(report.buckets[b].mean_wait),
                           d2s(report.buckets[b].median_wait)});
        }
        write_table(table, out_dir / (stem + ".csv"));
        std::cout << "overall mean wait: " << d2s(report.overall_mean_wait) << " s"
                  << (report.degenerate ? " (degenerate quartiles)" : "") << "\n";
        return 0;
    }

    const auto series = load_series(args.in, args.day_class);

    if (args.stat == "ecdf") {
        const auto table_data = explore::ecdf(attribute_column(series, args.attr));
        Table table;
        table.columns = {"value", "cumulative"};
        for (std::size_t i = 0; i < table_data.values().size(); ++i) {
            table.add_row({d2s(table_data.values()[i]), d2s(table_data.cumulative()[i])});
        }
        // The renderer keys on generic column names; the unit goes into the
        // axis label through the first column name.
        table.columns[0] = attribute_unit(args.attr);
        auto plot_table = table;
        plot_table.columns[0] = "value";
        write_table(table, out_dir / (stem + ".csv"));
        write_plot(plot_table, PlotKind::Ecdf, out_dir / (stem + ".svg"));
        return 0;
    }
    if (args.stat == "expfit") {
        auto samples = attribute_column(series, args.attr);
        std::vector<double> positive;
        std::size_t dropped = 0;
        for (double v : samples) {
            if (v > 0.0) {
                positive.push_back(v);
            } else {
                ++dropped;
            }
        }
        const auto fit = explore::fit_exponential(positive);
        Table table;
        table.columns = {"rate_per_unit", "n", "ks_stat", "dropped_nonpositive"};
        table.add_row({d2s(fit.rate), std::to_string(fit.n), d2s(fit.ks_stat),
                       std::to_string(dropped)});
        write_table(table, out_dir / (stem + ".csv"));

        // Histogram with the fitted density overlay.
        const auto [lo_it, hi_it] = std::minmax_element(positive.begin(), positive.end());
        const double lo = *lo_it, hi = *hi_it;
        const std::size_t bins = 40;
        const double width = (hi - lo) / static_cast<double>(bins) + 1e-12;
        std::vector<std::size_t> counts(bins, 0);
        for (double v : positive) {
            const auto b = std::min(bins - 1, static_cast<std::size_t>((v - lo) / width));
            ++counts[b];
        }
        Table hist;
        hist.columns = {"bin_lo", "bin_hi", "count", "fit"};
        for (std::size_t b = 0; b < bins; ++b) {
            const double a = lo + width * static_cast<double>(b);
            const double mid = a + width / 2.0;
            const double density = fit.rate * std::exp(-fit.rate * mid);
            hist.add_row({d2s(a), d2s(a + width), std::to_string(counts[b]),
                          d2s(density * static_cast<double>(positive.size()) * width)});
        }
        write_plot(hist, PlotKind::HistogramFit, out_dir / (stem + ".svg"));
        return 0;
    }
    if (args.stat == "acf" || args.stat == "pacf") {
        const auto samples = attribute_column(series, args.attr);
        const auto result = args.stat == "acf" ? explore::acf(samples, args.max_lag)
                                               : explore::pacf(samples, args.max_lag);
        Table table;
        table.columns = {"lag", "correlation", "band"};
        for (std::size_t k = 0; k < result.values.size(); ++k) {
            table.add_row({std::to_string(k), d2s(result.values[k]),
                           d2s(result.confidence_band)});
        }
        write_table(table, out_dir / (stem + ".csv"));
        write_plot(table, PlotKind::Acf, out_dir / (stem + ".svg"));
        return 0;
    }
    if (args.stat == "poisson" || args.stat == "consistency") {
        std::vector<double> times;
        for (const auto& b : series.blocks()) {
            times.push_back(static_cast<double>(b.timestamp));
        }
        const auto fit_a = explore::fit_poisson_histogram(times, args.slot_min * 60.0);
        if (args.stat == "poisson") {
            Table table;
            table.columns = {"slot_len_s", "intensity", "n_slots", "mean_count"};
            const auto mean_fit = explore::fit_poisson_slots(times, args.slot_min * 60.0);
            table.add_row({d2s(fit_a.slot_len), d2s(fit_a.intensity),
                           std::to_string(fit_a.n_slots), d2s(mean_fit.intensity)});
            write_table(table, out_dir / (stem + ".csv"));

            std::size_t max_count = 0;
            for (auto c : fit_a.counts) {
                max_count = std::max(max_count, c);
            }
            Table hist;
            hist.columns = {"bin_lo", "bin_hi", "count", "fit"};
            std::vector<std::size_t> histo(max_count + 1, 0);
            for (auto c : fit_a.counts) {
                ++histo[c];
            }
            double pmf = std::exp(-fit_a.intensity);
            for (std::size_t k = 0; k <= max_count; ++k) {
                hist.add_row({d2s(static_cast<double>(k) - 0.5),
                              d2s(static_cast<double>(k) + 0.5), std::to_string(histo[k]),
                              d2s(pmf * static_cast<double>(fit_a.n_slots))});
                pmf *= fit_a.intensity / static_cast<double>(k + 1);
            }
            write_plot(hist, PlotKind::HistogramFit, out_dir / (stem + ".svg"));
            return 0;
        }
        const auto fit_b = explore::fit_poisson_histogram(times, args.slot_min_b * 60.0);
        const auto verdict = explore::poisson_consistency(fit_a, fit_b, args.tolerance);
        Table table;
        table.columns = {"slot_a_s", "intensity_a", "slot_b_s", "intensity_b", "ratio",
                         "verdict"};
        table.add_row({d2s(fit_a.slot_len), d2s(fit_a.intensity), d2s(fit_b.slot_len),
                       d2s(fit_b.intensity), d2s(verdict.ratio),
                       verdict.verdict == explore::PoissonVerdict::Consistent ? "consistent"
                                                                              : "inconsistent"});
        write_table(table, out_dir / (stem + ".csv"));
        std::cout << "ratio: " << d2s(verdict.ratio) << " -> "
                  << (verdict.verdict == explore::PoissonVerdict::Consistent ? "consistent"
                                                                             : "inconsistent")
                  << "\n";
        return 0;
    }
    if (args.stat == "miner-summary") {
        const auto rows = explore::summary_by_miner(series);
        Table table;
        table.columns = {"miner", "blocks", "size_mb_mean", "size_mb_sd", "size_mb_min",
                         "size_mb_max", "tx_count_mean", "tx_count_sd", "tx_count_min",
                         "tx_count_max", "fee_btc_mean", "fee_btc_sd", "fee_btc_min",
                         "fee_btc_max"};
        for (const auto& row : rows) {
            table.add_row({row.miner, std::to_string(row.block_count), d2s(row.size_mb.mean),
                           d2s(row.size_mb.stddev), d2s(row.size_mb.min), d2s(row.size_mb.max),
                           d2s(row.tx_count.mean), d2s(row.tx_count.stddev),
                           d2s(row.tx_count.min), d2s(row.tx_count.max),
                           d2s(row.avg_fee_btc.mean), d2s(row.avg_fee_btc.stddev),
                           d2s(row.avg_fee_btc.min), d2s(row.avg_fee_btc.max)});
        }
        write_table(table, out_dir / (stem + ".csv"));
        return 0;
    }
    if (args.stat == "miner-counts") {
        const auto by_day = explore::miner_block_counts_by_day(series);
        Table table;
        table.columns = {"miner", "working", "weekend", "total"};
        for (const auto& [miner, counts] : by_day) {
            table.add_row({miner, std::to_string(counts.working),
                           std::to_string(counts.weekend),
                           std::to_string(counts.working + counts.weekend)});
        }
        write_table(table, out_dir / (stem + ".csv"));
        return 0;
    }
    throw Error("bad-flag", "unknown statistic: '" + args.stat + "'");
}

// ---------------------------------------------------------------------------
// forecast
// ---------------------------------------------------------------------------

struct ForecastArgs {
    std::string in;
    std::string target = "size";
    std::string models = "all";
    std::string day_class = "all";
    int p = 2, d = 0, q = 2;
    int delays = 2;
    int hidden = 10;
    double slot_min = 100.0;
    double train_frac = 0.70;
    double test_frac = 0.15;
    std::uint64_t seed = 1;
    int max_iterations = 200;
    double weight_decay = 1e-3;
    std::string out = ".";
    bool save_models = false;
};

struct PreparedSeries {
    std::vector<double> train;
    std::vector<double> test;
    forecast::ExogMatrix train_exog;
    forecast::ExogMatrix test_exog;
    bool has_exog = false;
};

PreparedSeries prepare_forecast_data(const ForecastArgs& args) {
    const auto series = load_series(args.in, args.day_class);
    PreparedSeries prep;
    if (args.target == "intensity") {
        std::vector<double> times;
        for (const auto& b : series.blocks()) {
            times.push_back(static_cast<double>(b.timestamp));
        }
        const auto fit = explore::fit_poisson_slots(times, args.slot_min * 60.0);
        std::vector<double> counts;
        counts.reserve(fit.counts.size());
        for (auto c : fit.counts) {
            counts.push_back(static_cast<double>(c));
        }
        const auto n_train = static_cast<std::size_t>(
            std::floor(static_cast<double>(counts.size()) * args.train_frac));
        const auto n_test = static_cast<std::size_t>(
            std::floor(static_cast<double>(counts.size()) * args.test_frac));
        if (n_train < 10 || n_test < 5) {
            throw Error("short-series", "not enough slots for an intensity forecast");
        }
        prep.train.assign(counts.begin(), counts.begin() + static_cast<std::ptrdiff_t>(n_train));
        prep.test.assign(counts.begin() + static_cast<std::ptrdiff_t>(n_train),
                         counts.begin() + static_cast<std::ptrdiff_t>(n_train + n_test));
        return prep;
    }

    std::vector<double> y;
    if (args.target == "size") {
        y = attribute_column(series, "size");
    } else if (args.target == "tx_count") {
        y = attribute_column(series, "tx_count");
    } else if (args.target == "interblock") {
        y = attribute_column(series, "interblock");
    } else {
        throw Error("bad-flag", "unknown target: '" + args.target + "'");
    }
    // Block attributes align with blocks; the interblock target drops the
    // first block. Exogenous rows follow the same indexing.
    const std::size_t offset = args.target == "interblock" ? 1 : 0;
    const auto counts = ingest::split_counts(y.size(), ingest::SplitSpec{
                                                           args.train_frac, args.test_frac,
                                                           1.0 - args.train_frac - args.test_frac});
    if (counts.train < 20 || counts.test < 10) {
        throw Error("short-series", "not enough data for the requested split");
    }
    prep.train.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(counts.train));
    prep.test.assign(y.begin() + static_cast<std::ptrdiff_t>(counts.train),
                     y.begin() + static_cast<std::ptrdiff_t>(counts.train + counts.test));
    prep.has_exog = true;
    const auto full_exog = block_exog(series, offset, y.size());
    auto slice_exog = [&](std::size_t from, std::size_t len) {
        forecast::ExogMatrix out;
        out.names = full_exog.names;
        for (const auto& col : full_exog.cols) {
            out.cols.emplace_back(col.begin() + static_cast<std::ptrdiff_t>(from),
                                  col.begin() + static_cast<std::ptrdiff_t>(from + len + 1));
        }
        return out;
    };
    prep.train_exog = slice_exog(0, counts.train);
    prep.test_exog = slice_exog(counts.train, counts.test);
    return prep;
}

int cmd_forecast(const ForecastArgs& args) {
    const auto prep = prepare_forecast_data(args);
    fs::create_directories(args.out);
    const fs::path out_dir(args.out);

    std::set<std::string> wanted;
    if (args.models == "all") {
        wanted = {"baseline", "ar", "arima", "nar"};
        if (prep.has_exog) {
            wanted.insert("arimax");
            wanted.insert("narx");
        }
    } else {
        for (auto piece : split(args.models, ',')) {
            wanted.emplace(trim(piece));
        }
    }

    forecast::TrainConfig nn_cfg;
    nn_cfg.seed = args.seed;
    nn_cfg.max_iterations = args.max_iterations;
    nn_cfg.weight_decay = args.weight_decay;

    struct FitResult {
        forecast::ForecastEvaluation eval;
        std::string model_json; // empty unless --save-models applies
    };

    auto fit_one = [&](const std::string& name) -> FitResult {
        FitResult result;
        if (name == "baseline") {
            result.eval = forecast::evaluate(forecast::naive_mean_baseline(prep.train),
                                             prep.test);
        } else if (name == "ar") {
            result.eval = forecast::evaluate(forecast::fit_ar(prep.train, args.p), prep.test);
        } else if (name == "arima") {
            auto model = forecast::fit_arima(prep.train, args.p, args.d, args.q);
            model.fitted_on = args.in;
            result.eval = forecast::evaluate(model, prep.test);
            if (args.save_models) {
                result.model_json = model.to_json().dump(2) + "\n";
            }
        } else if (name == "arimax") {
            if (!prep.has_exog) {
                throw Error("bad-flag", "target '" + args.target + "' has no exogenous inputs");
            }
            auto model = forecast::fit_arimax(prep.train, prep.train_exog, args.p, args.d,
                                              args.q);
            model.fitted_on = args.in;
            result.eval = forecast::evaluate(model, prep.test, &prep.test_exog);
            if (args.save_models) {
                result.model_json = model.to_json().dump(2) + "\n";
            }
        } else if (name == "nar") {
            const auto model = forecast::train_nar(prep.train, args.delays, args.hidden, nn_cfg);
            result.eval = forecast::evaluate(model, prep.test);
            if (args.save_models) {
                result.model_json = model.to_json().dump(2) + "\n";
            }
        } else if (name == "narx") {
            if (!prep.has_exog) {
                throw Error("bad-flag", "target '" + args.target + "' has no exogenous inputs");
            }
            const auto model = forecast::train_narx(prep.train, prep.train_exog, args.delays,
                                                    args.hidden, nn_cfg);
            result.eval = forecast::evaluate(model, prep.test, &prep.test_exog);
            if (args.save_models) {
                result.model_json = model.to_json().dump(2) + "\n";
            }
        } else {
            throw Error("bad-flag", "unknown model: '" + name + "'");
        }
        return result;
    };

    // Fan the fits out across workers; the series is shared immutable state.
    // Nothing is written until every fit has finished, and results land in
    // the fixed (alphabetical) model order, so the output bytes do not
    // depend on scheduling.
    std::map<std::string, std::future<FitResult>> futures;
    for (const auto& name : wanted) {
        futures.emplace(name, std::async(std::launch::async, fit_one, name));
    }
    std::map<std::string, FitResult> results;
    std::exception_ptr first_error;
    for (auto& [name, future] : futures) {
        try {
            results.emplace(name, future.get());
        } catch (...) {
            if (!first_error) {
                first_error = std::current_exception();
            }
        }
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }

    Table table;
    table.columns = {"model", "target", "day_class", "mae", "rmse", "n"};
    std::optional<forecast::ForecastEvaluation> overlay;
    std::string overlay_model;
    for (const auto& [name, result] : results) {
        table.add_row({name, args.target, args.day_class, d2s(result.eval.mae),
                       d2s(result.eval.rmse), std::to_string(result.eval.n)});
        if (!overlay) {
            overlay = result.eval;
            overlay_model = name;
        }
        if (!result.model_json.empty()) {
            atomic_write_file(out_dir / (name + "_model.json"), result.model_json);
        }
    }

    write_table(table, out_dir / "forecast_eval.csv");

    if (overlay) {
        Table series_table;
        series_table.columns = {"index", "measured", "predicted"};
        const std::size_t shown = std::min<std::size_t>(overlay->n, 200);
        const std::size_t first_scored = prep.test.size() - overlay->n;
        for (std::size_t i = 0; i < shown; ++i) {
            series_table.add_row({std::to_string(i),
                                  d2s(prep.test[first_scored + i]),
                                  d2s(overlay->predictions[i])});
        }
        write_table(series_table, out_dir / ("overlay_" + overlay_model + ".csv"));
        write_plot(series_table, PlotKind::SeriesOverlay,
                   out_dir / ("overlay_" + overlay_model + ".svg"));
    }
    std::cout << table.to_csv();
    return 0;
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

struct ClassifyArgs {
    std::string in;
    std::string model = "rusboost";
    std::string day_class = "all";
    std::size_t top_k = 8;
    int rounds = 50;
    int max_depth = 6;
    int min_leaf = 5;
    double train_frac = 0.70;
    std::uint64_t seed = 1;
    bool include_mempool = false;
    std::string out = ".";
};

int cmd_classify(const ClassifyArgs& args) {
    const auto series = load_series(args.in, args.day_class);
    const auto data = classify::build_feature_matrix(series, args.top_k, args.include_mempool);
    const auto parts = classify::stratified_split(data, args.train_frac);

    classify::ClassifierModel model;
    if (args.model == "cart") {
        model = classify::fit_cart(parts.train, args.max_depth, args.min_leaf);
    } else if (args.model == "boosted") {
        model = classify::fit_boosted(parts.train, args.rounds, args.max_depth);
    } else if (args.model == "rusboost") {
        model = classify::fit_rusboost(parts.train, args.rounds, args.max_depth, args.seed);
    } else {
        throw Error("bad-flag", "unknown model: '" + args.model + "'");
    }

    const auto eval = classify::evaluate_classifier(model, parts.test);
    fs::create_directories(args.out);
    const fs::path out_dir(args.out);

    Table confusion;
    confusion.columns = {"true\\predicted"};
    for (const auto& c : eval.classes) {
        confusion.columns.push_back(c);
    }
    for (std::size_t r = 0; r < eval.classes.size(); ++r) {
        std::vector<std::string> row{eval.classes[r]};
        for (std::size_t c = 0; c < eval.classes.size(); ++c) {
            row.push_back(std::to_string(eval.confusion[r][c]));
        }
        confusion.add_row(std::move(row));
    }
    write_table(confusion, out_dir / "confusion.csv");

    Table metrics;
    metrics.columns = {"metric", "value"};
    metrics.add_row({"model", args.model});
    metrics.add_row({"accuracy", d2s(eval.accuracy)});
    metrics.add_row({"sensitivity", d2s(eval.sensitivity)});
    metrics.add_row({"miss_rate", d2s(eval.miss_rate)});
    for (std::size_t c = 0; c < eval.classes.size(); ++c) {
        if (!std::isnan(eval.per_class_tpr[c])) {
            metrics.add_row({"tpr_" + eval.classes[c], d2s(eval.per_class_tpr[c])});
        }
        if (!std::isnan(eval.per_class_auc[c])) {
            metrics.add_row({"auc_" + eval.classes[c], d2s(eval.per_class_auc[c])});
        }
    }
    write_table(metrics, out_dir / "metrics.csv");

    for (std::size_t c = 0; c < eval.classes.size(); ++c) {
        if (eval.per_class_roc[c].points.empty()) {
            continue;
        }
        Table roc;
        roc.columns = {"fpr", "tpr"};
        for (const auto& [fpr, tpr] : eval.per_class_roc[c].points) {
            roc.add_row({d2s(fpr), d2s(tpr)});
        }
        write_table(roc, out_dir / ("roc_" + eval.classes[c] + ".csv"));
        write_plot(roc, PlotKind::Roc, out_dir / ("roc_" + eval.classes[c] + ".svg"));
    }

    atomic_write_file(out_dir / "model.json", model.to_json().dump(2) + "\n");
    std::cout << metrics.to_csv();
    return 0;
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

int cmd_report(const std::string& blocks, const std::string& txs, const std::string& out) {
    const auto loaded = ingest::load_block_csv(blocks);
    const auto& series = loaded.series;
    fs::create_directories(out);
    const fs::path out_dir(out);

    {
        ExploreArgs args;
        args.in = blocks;
        args.stat = "miner-summary";
        args.out = out;
        cmd_explore(args);
        fs::rename(out_dir / "miner-summary.csv", out_dir / "table1_miner_summary.csv");
    }
    {
        Table table;
        table.columns = {"dataset", "training", "test", "validation", "blocks"};
        const ingest::SplitSpec spec;
        auto add = [&](const std::string& name, const BlockSeries& part) {
            const auto counts = ingest::split_counts(part.size(), spec);
            table.add_row({name, std::to_string(counts.train), std::to_string(counts.test),
                           std::to_string(counts.validation), std::to_string(part.size())});
        };
        add("Working_day", ingest::filter_day_class(series, DayClass::Working));
        add("Weekend_day", ingest::filter_day_class(series, DayClass::Weekend));
        add("All_db", series);
        write_table(table, out_dir / "table2_division.csv");
    }
    for (const auto* attr : {"size", "tx_count", "avg_fee"}) {
        for (const auto* day : {"working", "weekend"}) {
            ExploreArgs args;
            args.in = blocks;
            args.stat = "ecdf";
            args.attr = attr;
            args.day_class = day;
            args.out = out;
            cmd_explore(args);
        }
    }
    if (!txs.empty()) {
        ExploreArgs args;
        args.txs = txs;
        args.stat = "quartiles";
        args.out = out;
        cmd_explore(args);
    }
    std::cout << "report written to " << out << "\n";
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"Bitcoin transaction-handling analytics toolkit"};
    app.set_config("--config", "", "INI config file (key=value; flags win)");
    app.require_subcommand(1);

    // simulate
    SimulateArgs sim_args;
    auto* sim_cmd = app.add_subcommand("simulate", "run the mempool/block simulator");
    sim_cmd->add_option("--seed", sim_args.seed, "master seed");
    sim_cmd->add_option("--horizon", sim_args.horizon, "simulated seconds")->required();
    sim_cmd->add_option("--block-interval-mean", sim_args.block_interval_mean,
                        "mean seconds between blocks");
    sim_cmd->add_option("--arrival-rate", sim_args.arrival_rate, "Poisson tx arrivals per second");
    sim_cmd->add_option("--arrival-mmpp", sim_args.arrival_mmpp,
                        "MMPP2 arrivals: rate_lo,rate_hi,switch_lh,switch_hl");
    sim_cmd->add_option("--modulate", sim_args.modulate,
                        "block-interval modulation: f_lo,f_hi,switch_lh,switch_hl");
    sim_cmd->add_option("--pools-json", sim_args.pools_json, "pool policies (JSON file)");
    sim_cmd->add_option("--fee-log-mean", sim_args.fee_log_mean, "lognormal fee parameter");
    sim_cmd->add_option("--fee-log-sd", sim_args.fee_log_sd, "lognormal fee parameter");
    sim_cmd->add_option("--tx-size-log-mean", sim_args.tx_size_log_mean,
                        "lognormal size parameter");
    sim_cmd->add_option("--tx-size-log-sd", sim_args.tx_size_log_sd, "lognormal size parameter");
    sim_cmd->add_option("--out", sim_args.out, "output directory")->required();

    // ingest
    auto* ingest_cmd = app.add_subcommand("ingest", "load, validate, split or collect datasets");
    ingest_cmd->require_subcommand(1);
    std::string ing_in, ing_txs, ing_fracs = "0.7,0.15,0.15", ing_out = ".";
    auto* validate_cmd = ingest_cmd->add_subcommand("validate", "schema-check a dataset");
    validate_cmd->add_option("--in", ing_in, "block CSV")->required();
    validate_cmd->add_option("--txs", ing_txs, "transaction CSV");
    auto* split_cmd = ingest_cmd->add_subcommand("split", "chronological train/test/validation");
    split_cmd->add_option("--in", ing_in, "block CSV")->required();
    split_cmd->add_option("--fracs", ing_fracs, "train,test,validation fractions");
    split_cmd->add_option("--out", ing_out, "output directory")->required();
    std::string col_url = "http://127.0.0.1:8332";
    std::int64_t col_from = 0, col_to = 0;
    double col_poll = 1.0;
    std::string col_out = "blocks.csv";
    auto* collect_cmd = ingest_cmd->add_subcommand("collect", "pull blocks over JSON-RPC");
    collect_cmd->add_option("--url", col_url, "node RPC endpoint");
    collect_cmd->add_option("--from", col_from, "first height")->required();
    collect_cmd->add_option("--to", col_to, "last height")->required();
    collect_cmd->add_option("--poll", col_poll, "poll/backoff interval seconds");
    collect_cmd->add_option("--out", col_out, "output CSV");

    // explore
    ExploreArgs explore_args;
    auto* explore_cmd = app.add_subcommand("explore", "exploratory statistics");
    explore_cmd->add_option("--in", explore_args.in, "block CSV");
    explore_cmd->add_option("--txs", explore_args.txs, "transaction CSV");
    explore_cmd->add_option("--stat", explore_args.stat,
                            "ecdf|expfit|acf|pacf|poisson|consistency|miner-summary|"
                            "miner-counts|quartiles")
        ->required();
    explore_cmd->add_option("--attr", explore_args.attr, "size|tx_count|avg_fee|interblock");
    explore_cmd->add_option("--day-class", explore_args.day_class, "all|working|weekend");
    explore_cmd->add_option("--max-lag", explore_args.max_lag, "ACF/PACF maximum lag");
    explore_cmd->add_option("--slot-min", explore_args.slot_min, "slot length (minutes)");
    explore_cmd->add_option("--slot-min-b", explore_args.slot_min_b,
                            "second slot length (minutes)");
    explore_cmd->add_option("--tolerance", explore_args.tolerance, "consistency tolerance");
    explore_cmd->add_option("--out", explore_args.out, "output directory");

    // forecast
    ForecastArgs fc_args;
    auto* forecast_cmd = app.add_subcommand("forecast", "one-step-ahead prediction");
    forecast_cmd->add_option("--in", fc_args.in, "block CSV")->required();
    forecast_cmd->add_option("--target", fc_args.target, "size|tx_count|interblock|intensity");
    forecast_cmd->add_option("--model,--models", fc_args.models,
                             "baseline|ar|arima|arimax|nar|narx or 'all' or a comma list");
    forecast_cmd->add_option("--day-class", fc_args.day_class, "all|working|weekend");
    forecast_cmd->add_option("--p", fc_args.p, "AR order");
    forecast_cmd->add_option("--d", fc_args.d, "difference order");
    forecast_cmd->add_option("--q", fc_args.q, "MA order");
    forecast_cmd->add_option("--delays", fc_args.delays, "network input delays");
    forecast_cmd->add_option("--hidden", fc_args.hidden, "hidden units");
    forecast_cmd->add_option("--slot-min", fc_args.slot_min, "intensity slot length (minutes)");
    forecast_cmd->add_option("--train-frac", fc_args.train_frac, "training fraction");
    forecast_cmd->add_option("--test-frac", fc_args.test_frac, "test fraction");
    forecast_cmd->add_option("--seed", fc_args.seed, "training seed");
    forecast_cmd->add_option("--max-iterations", fc_args.max_iterations, "LM iteration cap");
    forecast_cmd->add_option("--weight-decay", fc_args.weight_decay, "regularization alpha");
    forecast_cmd->add_flag("--save-models", fc_args.save_models, "write model JSON files");
    forecast_cmd->add_option("--out", fc_args.out, "output directory");

    // classify
    ClassifyArgs cls_args;
    auto* classify_cmd = app.add_subcommand("classify", "miner classification");
    classify_cmd->add_option("--in", cls_args.in, "block CSV")->required();
    classify_cmd->add_option("--model", cls_args.model, "cart|boosted|rusboost");
    classify_cmd->add_option("--day-class", cls_args.day_class, "all|working|weekend");
    classify_cmd->add_option("--top-k", cls_args.top_k, "labeled pools; the rest become Other");
    classify_cmd->add_option("--rounds", cls_args.rounds, "boosting rounds");
    classify_cmd->add_option("--max-depth", cls_args.max_depth, "tree depth cap");
    classify_cmd->add_option("--min-leaf", cls_args.min_leaf, "minimum rows per leaf");
    classify_cmd->add_option("--train-frac", cls_args.train_frac, "training fraction");
    classify_cmd->add_option("--seed", cls_args.seed, "sampling seed");
    classify_cmd->add_flag("--include-mempool", cls_args.include_mempool,
                           "append mempool-state features");
    classify_cmd->add_option("--out", cls_args.out, "output directory");

    // report
    std::string rep_blocks, rep_txs, rep_out = ".";
    auto* report_cmd = app.add_subcommand("report", "dataset tables and figures");
    report_cmd->add_option("--blocks", rep_blocks, "block CSV")->required();
    report_cmd->add_option("--txs", rep_txs, "transaction CSV");
    report_cmd->add_option("--out", rep_out, "output directory");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error[usage]: " << e.what() << "\n";
        return 2;
    }

    try {
        if (sim_cmd->parsed()) {
            return cmd_simulate(sim_args);
        }
        if (ingest_cmd->parsed()) {
            if (validate_cmd->parsed()) {
                return cmd_ingest_validate(ing_in, ing_txs);
            }
            if (split_cmd->parsed()) {
                return cmd_ingest_split(ing_in, ing_fracs, ing_out);
            }
            return cmd_ingest_collect(col_url, col_from, col_to, col_poll, col_out);
        }
        if (explore_cmd->parsed()) {
            return cmd_explore(explore_args);
        }
        if (forecast_cmd->parsed()) {
            return cmd_forecast(fc_args);
        }
        if (classify_cmd->parsed()) {
            return cmd_classify(cls_args);
        }
        if (report_cmd->parsed()) {
            return cmd_report(rep_blocks, rep_txs, rep_out);
        }
    } catch (const Error& e) {
        std::cerr << "error[" << e.code() << "]: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error[internal]: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "error[usage]: no subcommand selected\n";
    return 2;
}

} // namespace chainpulse::cli
