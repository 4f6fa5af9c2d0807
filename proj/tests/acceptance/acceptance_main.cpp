// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.
//
// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the exit status is the number of failed criteria. `--only N` runs a single
// criterion, `--skip N` (repeatable) excludes criteria.
//
// Criterion 4 is expected to fail: the requested tolerance sits below the
// Cramer-Rao bound for that model and sample size (the fit is unbiased and
// efficient; no estimator can land all four coefficients inside +-0.05 in
// 19 of 20 trials). It still runs and reports the honest count.

#include "chainpulse/classify/features.hpp"
#include "chainpulse/classify/metrics.hpp"
#include "chainpulse/classify/model.hpp"
#include "chainpulse/cli/run.hpp"
#include "chainpulse/core/series.hpp"
#include "chainpulse/explore/fits.hpp"
#include "chainpulse/explore/summaries.hpp"
#include "chainpulse/forecast/arima.hpp"
#include "chainpulse/forecast/evaluate.hpp"
#include "chainpulse/forecast/narnet.hpp"
#include "chainpulse/ingest/csv_io.hpp"
#include "chainpulse/ingest/split.hpp"
#include "chainpulse/sim/simulator.hpp"
#include "chainpulse/util/error.hpp"
#include "chainpulse/util/rng.hpp"
#include "chainpulse/util/text.hpp"

#include "../support/arma_oracle.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <unistd.h>
#include <vector>

namespace {

using namespace chainpulse;
namespace fs = std::filesystem;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string num(double v, int precision = 4) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    return buf;
}

// --- 1: Table II split arithmetic on an 80,408-row synthetic file ----------

Outcome criterion_split_arithmetic() {
    const fs::path dir =
        fs::temp_directory_path() / ("chainpulse-acc1-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    std::vector<BlockRecord> blocks;
    blocks.reserve(80'408);
    Rng rng(1);
    std::int64_t ts = 1'551'916'800;
    for (std::int64_t h = 0; h < 80'408; ++h) {
        BlockRecord b;
        b.height = h;
        b.timestamp = ts;
        ts += static_cast<std::int64_t>(rng.below(1200)) + 1;
        b.miner = "P" + std::to_string(rng.below(5));
        b.size = 1'000'000;
        b.tx_count = 2000;
        b.avg_fee = Amount::from_sats(18'000);
        blocks.push_back(std::move(b));
    }
    ingest::save_block_csv(BlockSeries::from_blocks(std::move(blocks)), dir / "blocks.csv");
    const auto loaded = ingest::load_block_csv(dir / "blocks.csv");
    const auto parts = ingest::split_dataset(loaded.series, ingest::SplitSpec{0.70, 0.15, 0.15});
    fs::remove_all(dir);

    const bool pass = parts.train.size() == 56'286 && parts.test.size() == 12'061 &&
                      parts.validation.size() == 12'061;
    return {pass, "split(80408 @ 0.70/0.15/0.15) = " + std::to_string(parts.train.size()) +
                      "/" + std::to_string(parts.test.size()) + "/" +
                      std::to_string(parts.validation.size()) + ", want 56286/12061/12061"};
}

// --- 2: exponential inter-block recovery over 50,000 blocks ----------------

sim::SimOutput blocks_only_simulation(std::uint64_t seed, double horizon) {
    sim::SimConfig config = sim::SimConfig::defaults();
    config.seed = seed;
    config.horizon = horizon;
    config.tx_arrival = sim::ArrivalModel::poisson(1e-12);
    return sim::run_simulation(config);
}

Outcome criterion_exponential_recovery() {
    const auto out = blocks_only_simulation(2001, 50'000.0 * 600.0);
    std::vector<double> gaps;
    for (auto g : out.blocks.interblock()) {
        if (g > 0) {
            gaps.push_back(static_cast<double>(g));
        }
    }
    const auto fit = explore::fit_exponential(gaps);
    const double mean = 1.0 / fit.rate;
    const bool pass = std::abs(mean - 600.0) / 600.0 <= 0.02 && fit.ks_stat < 0.01;
    return {pass, std::to_string(out.blocks.size()) + " blocks, fitted mean " + num(mean, 2) +
                      " s (tol 2% of 600), ks " + num(fit.ks_stat, 5) + " (< 0.01)"};
}

// --- 3: Poisson cross-scale consistency -------------------------------------

Outcome criterion_poisson_consistency() {
    // (a) homogeneous block generation: scaled intensities agree.
    const auto homogeneous = blocks_only_simulation(2001, 50'000.0 * 600.0);
    std::vector<double> times;
    for (const auto& b : homogeneous.blocks.blocks()) {
        times.push_back(static_cast<double>(b.timestamp));
    }
    const auto fit_a = explore::fit_poisson_histogram(times, 100.0 * 60.0);
    const auto fit_b = explore::fit_poisson_histogram(times, 1000.0 * 60.0);
    const auto homo = explore::poisson_consistency(fit_a, fit_b, 0.03);
    const bool homo_ok = homo.verdict == explore::PoissonVerdict::Consistent;

    // (b) hazard-modulated block generation: the histogram-shape fit must
    // disagree across scales (ratios in the 1.09+ range).
    sim::SimConfig config = sim::SimConfig::defaults();
    config.seed = 101;
    config.horizon = 1.8e7;
    config.tx_arrival = sim::ArrivalModel::poisson(1e-12);
    sim::BlockModulation mod;
    mod.factor_low = 0.25;
    mod.factor_high = 4.0;
    mod.switch_low_high = 1.0 / 30'000.0;
    mod.switch_high_low = 1.0 / 30'000.0;
    config.block_modulation = mod;
    const auto modulated = sim::run_simulation(config);
    std::vector<double> mod_times;
    for (const auto& b : modulated.blocks.blocks()) {
        mod_times.push_back(static_cast<double>(b.timestamp));
    }
    const auto mfit_a = explore::fit_poisson_histogram(mod_times, 100.0 * 60.0);
    const auto mfit_b = explore::fit_poisson_histogram(mod_times, 1000.0 * 60.0);
    const auto inhom = explore::poisson_consistency(mfit_a, mfit_b, 0.05);
    const bool inhom_ok = std::abs(inhom.ratio - 1.0) > 0.05 &&
                          inhom.verdict == explore::PoissonVerdict::Inconsistent;

    return {homo_ok && inhom_ok,
            "homogeneous ratio " + num(homo.ratio) + " (within 0.03), modulated ratio " +
                num(inhom.ratio) + " (|ratio-1| > 0.05 wanted)"};
}

// --- 4: ARMA(2,2) coefficient recovery (documented expected failure) --------

Outcome criterion_arma_recovery() {
    const std::vector<double> phi{0.4, 0.2};
    const std::vector<double> theta{0.3, -0.2};
    int recovered = 0;
    for (int trial = 1; trial <= 20; ++trial) {
        const auto series =
            test::simulate_arma(phi, theta, 0.0, 1.0, 10'000, 1000 + static_cast<std::uint64_t>(trial));
        const auto model = forecast::fit_arima(series, 2, 0, 2);
        const bool ok = std::abs(model.ar[0] - 0.4) < 0.05 && std::abs(model.ar[1] - 0.2) < 0.05 &&
                        std::abs(model.ma[0] - 0.3) < 0.05 && std::abs(model.ma[1] + 0.2) < 0.05;
        recovered += ok;
    }
    const bool pass = recovered >= 19;
    return {pass, std::to_string(recovered) +
                      "/20 trials inside +-0.05 (need 19; CSS fit is CRLB-efficient, "
                      "SE(phi1)~0.062 at N=1e4, so the tolerance is below the "
                      "information bound - see decisions ledger)"};
}

// --- 5: exogenous-benefit ordering ------------------------------------------

struct PlantedData {
    std::vector<double> y_train, y_test;
    forecast::ExogMatrix x_train, x_test;
};

PlantedData planted_exog_data(std::uint64_t seed) {
    Rng rng(seed);
    const std::size_t n = 6000;
    std::vector<double> y(n, 0.0);
    forecast::ExogMatrix exog;
    exog.names = {"x"};
    exog.cols.emplace_back(n, 0.0);
    double x_prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        exog.cols[0][i] = x_prev; // pre-lagged: known before step i
        y[i] = 0.3 * (i > 0 ? y[i - 1] : 0.0) + 2.0 * x_prev + 0.5 * rng.normal();
        x_prev = rng.normal();
    }
    const std::size_t cut = 4200;
    PlantedData data;
    data.y_train.assign(y.begin(), y.begin() + cut);
    data.y_test.assign(y.begin() + cut, y.end());
    data.x_train.names = data.x_test.names = exog.names;
    data.x_train.cols = {std::vector<double>(exog.cols[0].begin(), exog.cols[0].begin() + cut)};
    data.x_test.cols = {std::vector<double>(exog.cols[0].begin() + cut, exog.cols[0].end())};
    return data;
}

Outcome criterion_exogenous_ordering() {
    const auto data = planted_exog_data(505);
    const auto arima = forecast::evaluate(forecast::fit_arima(data.y_train, 2, 0, 2), data.y_test);
    const auto arimax = forecast::evaluate(
        forecast::fit_arimax(data.y_train, data.x_train, 2, 0, 2), data.y_test, &data.x_test);

    forecast::TrainConfig cfg;
    cfg.seed = 2;
    cfg.max_iterations = 150;
    const auto nar =
        forecast::evaluate(forecast::train_nar(data.y_train, 2, 10, cfg), data.y_test);
    const auto narx = forecast::evaluate(
        forecast::train_narx(data.y_train, data.x_train, 2, 10, cfg), data.y_test, &data.x_test);

    const double arimax_ratio = arimax.rmse / arima.rmse;
    const double narx_ratio = narx.rmse / nar.rmse;
    const bool pass = narx_ratio <= 0.8 && arimax_ratio <= 0.9;
    return {pass, "NARX/NAR rmse " + num(narx_ratio) + " (<= 0.8), ARIMAX/ARIMA rmse " +
                      num(arimax_ratio) + " (<= 0.9)"};
}

// --- 6: memorylessness negative result ---------------------------------------

Outcome criterion_memorylessness() {
    Rng rng(606);
    std::vector<double> gaps;
    gaps.reserve(50'000);
    for (int i = 0; i < 50'000; ++i) {
        gaps.push_back(rng.exponential(600.0));
    }
    const std::vector<double> train(gaps.begin(), gaps.begin() + 35'000);
    const std::vector<double> test(gaps.begin() + 35'000, gaps.begin() + 42'500);
    const auto baseline = forecast::evaluate(forecast::naive_mean_baseline(train), test);

    std::vector<std::pair<std::string, double>> ratios;
    ratios.emplace_back("AR(1)", forecast::evaluate(forecast::fit_ar(train, 1), test).rmse /
                                     baseline.rmse);
    ratios.emplace_back("AR(2)", forecast::evaluate(forecast::fit_ar(train, 2), test).rmse /
                                     baseline.rmse);
    ratios.emplace_back("ARIMA(2,0,2)",
                        forecast::evaluate(forecast::fit_arima(train, 2, 0, 2), test).rmse /
                            baseline.rmse);
    forecast::TrainConfig cfg;
    cfg.seed = 1;
    cfg.max_iterations = 120;
    ratios.emplace_back("NAR", forecast::evaluate(forecast::train_nar(train, 2, 10, cfg), test)
                                       .rmse /
                                   baseline.rmse);
    bool pass = true;
    std::string detail = "rmse/baseline:";
    for (const auto& [name, ratio] : ratios) {
        pass = pass && ratio >= 0.95;
        detail += " " + name + "=" + num(ratio);
    }
    detail += " (all >= 0.95)";
    return {pass, detail};
}

// --- 7: distinct-pool classification ----------------------------------------

Outcome criterion_distinct_pool() {
    sim::SimConfig config = sim::SimConfig::defaults();
    config.seed = 707;
    config.horizon = 5200.0 * 600.0;
    config.tx_arrival = sim::ArrivalModel::poisson(0.6);
    config.pools = {
        {"Alpha", 0.2, 1'000'000, 0.0, sim::Selection::FeeRateGreedy},
        {"Beta", 0.2, 1'000'000, 0.0, sim::Selection::FeeRateGreedy},
        {"Gamma", 0.2, 1'000'000, 0.0, sim::Selection::FeeRateGreedy},
        {"Delta", 0.2, 1'000'000, 0.0, sim::Selection::FeeRateGreedy},
        {"Distinct", 0.2, 300'000, 2e-7, sim::Selection::FeeRateGreedy},
    };
    const auto out = sim::run_simulation(config);
    const auto data = classify::build_feature_matrix(out.blocks, 5);
    const auto parts = classify::stratified_split(data, 0.70);
    const auto model = classify::fit_rusboost(parts.train, 60, 10, 99);
    const auto eval = classify::evaluate_classifier(model, parts.test);
    double distinct_tpr = 0.0;
    double max_other_tpr = 0.0;
    for (std::size_t c = 0; c < eval.classes.size(); ++c) {
        if (eval.classes[c] == "Distinct") {
            distinct_tpr = eval.per_class_tpr[c];
        } else {
            max_other_tpr = std::max(max_other_tpr, eval.per_class_tpr[c]);
        }
    }

    sim::SimConfig binary = sim::SimConfig::defaults();
    binary.seed = 708;
    binary.horizon = 2600.0 * 600.0;
    binary.tx_arrival = sim::ArrivalModel::poisson(0.5);
    binary.pools = {
        {"SmallCap", 0.5, 300'000, 2e-7, sim::Selection::FeeRateGreedy},
        {"FifoPool", 0.5, 1'000'000, 0.0, sim::Selection::Fifo},
    };
    const auto out2 = sim::run_simulation(binary);
    const auto data2 = classify::build_feature_matrix(out2.blocks, 2);
    const auto parts2 = classify::stratified_split(data2, 0.70);
    const auto model2 = classify::fit_rusboost(parts2.train, 40, 6, 99);
    const auto eval2 = classify::evaluate_classifier(model2, parts2.test);

    const bool pass = distinct_tpr >= 0.7 && max_other_tpr <= 0.35 && eval2.accuracy >= 0.85;
    return {pass, "distinct TPR " + num(distinct_tpr, 3) + " (>= 0.7), max indistinct TPR " +
                      num(max_other_tpr, 3) + " (<= 0.35), binary accuracy " +
                      num(eval2.accuracy, 3) + " (>= 0.85)"};
}

// --- 8: metric identities at reporting precision -----------------------------

classify::ClassifierModel threshold_model() {
    classify::FeatureMatrix seed_data;
    seed_data.feature_names = {"x", "pad"};
    seed_data.classes = {"A", "B"};
    seed_data.push_row(std::vector<double>{0.0, 0.0}, 0);
    seed_data.push_row(std::vector<double>{1.0, 0.0}, 1);
    return classify::fit_cart(seed_data, 1, 1);
}

Outcome criterion_metric_identities() {
    const auto model = threshold_model();
    auto evaluate_with_sensitivity = [&](int per_thousand) {
        classify::FeatureMatrix test;
        test.feature_names = {"x", "pad"};
        test.classes = {"A", "B"};
        auto add_rows = [&](double x, int label, int count) {
            for (int i = 0; i < count; ++i) {
                test.push_row(std::vector<double>{x, 0.0}, label);
            }
        };
        add_rows(0.0, 0, per_thousand);
        add_rows(1.0, 0, 1000 - per_thousand);
        add_rows(1.0, 1, per_thousand);
        add_rows(0.0, 1, 1000 - per_thousand);
        return classify::evaluate_classifier(model, test);
    };

    const auto high = evaluate_with_sensitivity(885);
    const auto low = evaluate_with_sensitivity(881);
    char miss_high[16], miss_low[16];
    std::snprintf(miss_high, sizeof(miss_high), "%.3f", high.miss_rate);
    std::snprintf(miss_low, sizeof(miss_low), "%.3f", low.miss_rate);
    const bool pass = std::abs(high.sensitivity - 0.885) < 1e-12 &&
                      std::abs(high.miss_rate - 0.115) < 1e-12 &&
                      std::string(miss_high) == "0.115" &&
                      std::abs(low.sensitivity - 0.881) < 1e-12 &&
                      std::abs(low.miss_rate - 0.119) < 1e-12 &&
                      std::string(miss_low) == "0.119" &&
                      high.miss_rate + high.sensitivity == 1.0 &&
                      low.miss_rate + low.sensitivity == 1.0;
    return {pass, std::string("0.885 -> ") + miss_high + ", 0.881 -> " + miss_low +
                      " (exact at table precision, miss + sensitivity == 1)"};
}

// --- 9: fee-quartile ordering -------------------------------------------------

Outcome criterion_fee_quartiles() {
    sim::SimConfig config = sim::SimConfig::defaults(); // fee-rate greedy pools
    config.seed = 901;
    config.horizon = 2000.0 * 600.0;
    const auto out = sim::run_simulation(config);
    const auto report = explore::confirmation_by_fee_quartile(out.txs);
    const auto& b = report.buckets;
    const bool decreasing = b[0].mean_wait > b[1].mean_wait && b[1].mean_wait > b[2].mean_wait &&
                            b[2].mean_wait > b[3].mean_wait;
    const bool halved = b[3].mean_wait < 0.5 * b[0].mean_wait;
    return {decreasing && halved,
            "mean waits " + num(b[0].mean_wait, 0) + " > " + num(b[1].mean_wait, 0) + " > " +
                num(b[2].mean_wait, 0) + " > " + num(b[3].mean_wait, 0) + " s, Q4/Q1 = " +
                num(b[3].mean_wait / b[0].mean_wait, 3) + " (< 0.5)"};
}

// --- 10: determinism suite ------------------------------------------------------

std::map<std::string, std::string> dir_snapshot(const fs::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (entry.is_regular_file()) {
            files[fs::relative(entry.path(), dir).string()] = read_file(entry.path());
        }
    }
    return files;
}

Outcome criterion_determinism() {
    std::string detail;
    bool pass = true;

    {
        sim::SimConfig config = sim::SimConfig::defaults();
        config.seed = 42;
        config.horizon = 120'000.0;
        config.tx_arrival = sim::ArrivalModel::poisson(0.2);
        const auto a = sim::run_simulation(config);
        const auto b = sim::run_simulation(config);
        const bool same = ingest::to_block_csv(a.blocks) == ingest::to_block_csv(b.blocks) &&
                          ingest::to_tx_csv(a.txs) == ingest::to_tx_csv(b.txs);
        pass = pass && same;
        detail += std::string("simulate=") + (same ? "identical" : "DIFFERS");
    }
    {
        const auto data = planted_exog_data(99);
        forecast::TrainConfig cfg;
        cfg.seed = 7;
        cfg.max_iterations = 40;
        const auto nar_a = forecast::train_nar(data.y_train, 2, 6, cfg).to_json().dump();
        const auto nar_b = forecast::train_nar(data.y_train, 2, 6, cfg).to_json().dump();
        const auto narx_a =
            forecast::train_narx(data.y_train, data.x_train, 2, 6, cfg).to_json().dump();
        const auto narx_b =
            forecast::train_narx(data.y_train, data.x_train, 2, 6, cfg).to_json().dump();
        const bool same = nar_a == nar_b && narx_a == narx_b;
        pass = pass && same;
        detail += std::string(", nar/narx=") + (same ? "identical" : "DIFFERS");
    }
    {
        sim::SimConfig config = sim::SimConfig::defaults();
        config.seed = 55;
        config.horizon = 700'000.0;
        config.tx_arrival = sim::ArrivalModel::poisson(0.05);
        const auto out = sim::run_simulation(config);
        const auto data = classify::build_feature_matrix(out.blocks, 5);
        const auto a = classify::fit_rusboost(data, 12, 4, 5).to_json().dump();
        const auto b = classify::fit_rusboost(data, 12, 4, 5).to_json().dump();
        pass = pass && a == b;
        detail += std::string(", rusboost=") + (a == b ? "identical" : "DIFFERS");
    }
    {
        const fs::path base =
            fs::temp_directory_path() / ("chainpulse-acc10-" + std::to_string(::getpid()));
        fs::remove_all(base);
        // The CLI chatters on stdout; keep the acceptance log to one line
        // per criterion.
        struct MuteCout {
            std::streambuf* saved = std::cout.rdbuf(nullptr);
            ~MuteCout() { std::cout.rdbuf(saved); }
        } mute;
        auto pipeline = [&](const std::string& tag) {
            const auto dir = (base / tag).string();
            int rc = 0;
            rc |= cli::run({"simulate", "--seed", "21", "--horizon", "400000",
                            "--arrival-rate", "0.05", "--out", dir + "/sim"});
            rc |= cli::run({"explore", "--in", dir + "/sim/blocks.csv", "--stat", "ecdf",
                            "--attr", "size", "--out", dir + "/stats"});
            rc |= cli::run({"forecast", "--in", dir + "/sim/blocks.csv", "--target", "size",
                            "--models", "baseline,ar,nar", "--max-iterations", "30", "--seed",
                            "3", "--out", dir + "/fc"});
            rc |= cli::run({"classify", "--in", dir + "/sim/blocks.csv", "--model", "rusboost",
                            "--rounds", "8", "--max-depth", "3", "--seed", "3", "--top-k", "5",
                            "--out", dir + "/cls"});
            return rc;
        };
        const int rc_a = pipeline("a");
        const int rc_b = pipeline("b");
        const bool same =
            rc_a == 0 && rc_b == 0 && dir_snapshot(base / "a") == dir_snapshot(base / "b");
        fs::remove_all(base);
        pass = pass && same;
        detail += std::string(", cli-pipeline=") + (same ? "identical" : "DIFFERS");
    }
    return {pass, detail};
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> runner;
};

} // namespace

int main(int argc, char** argv) {
    std::set<int> skip;
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--only" && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else if (arg == "--skip" && i + 1 < argc) {
            skip.insert(std::atoi(argv[++i]));
        } else {
            std::fprintf(stderr, "usage: %s [--only N] [--skip N]...\n", argv[0]);
            return 64;
        }
    }

    const std::vector<Criterion> criteria = {
        {1, "split arithmetic yields the canonical division counts", criterion_split_arithmetic},
        {2, "exponential inter-block recovery at 50k blocks", criterion_exponential_recovery},
        {3, "Poisson cross-scale consistency and its violation", criterion_poisson_consistency},
        {4, "ARMA(2,2) coefficient recovery across 20 seeded trials", criterion_arma_recovery},
        {5, "exogenous inputs dominate their plain counterparts", criterion_exogenous_ordering},
        {6, "memoryless gaps defeat every forecaster", criterion_memorylessness},
        {7, "only the distinct pool is classifiable", criterion_distinct_pool},
        {8, "metric identities hold at reporting precision", criterion_metric_identities},
        {9, "fee quartiles order confirmation times", criterion_fee_quartiles},
        {10, "seeded runs are byte-identical end to end", criterion_determinism},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        if ((only != 0 && criterion.id != only) || skip.count(criterion.id) != 0) {
            continue;
        }
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criterion.runner();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s  %2d  %s — %s  (%.1fs)\n", outcome.pass ? "PASS" : "FAIL",
                    criterion.id, criterion.name, outcome.detail.c_str(), seconds);
        std::fflush(stdout);
        failures += outcome.pass ? 0 : 1;
    }
    return failures;
}
