// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "chainpulse/cli/plot.hpp"
#include "chainpulse/cli/run.hpp"
#include "chainpulse/cli/table.hpp"
#include "chainpulse/util/error.hpp"
#include "chainpulse/util/text.hpp"

#include <doctest.h>

#include <filesystem>
#include <map>
#include <string>
#include <unistd.h>
#include <vector>

using namespace chainpulse;
using namespace chainpulse::cli;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() /
               ("chainpulse-cli-" + tag + "-" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str(const std::string& sub = "") const {
        return sub.empty() ? path.string() : (path / sub).string();
    }
};

// Byte map of every regular file under a directory.
std::map<std::string, std::string> snapshot(const fs::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (entry.is_regular_file()) {
            files[fs::relative(entry.path(), dir).string()] = read_file(entry.path());
        }
    }
    return files;
}

int run_cli(std::initializer_list<std::string> args) {
    return run(std::vector<std::string>(args));
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("table csv round-trips") {
    Table table;
    table.columns = {"a", "b"};
    table.add_row({"1", "x"});
    table.add_row({"2.5", "y"});
    const auto text = table.to_csv();
    const auto back = Table::from_csv(text);
    CHECK(back.columns == table.columns);
    CHECK(back.rows == table.rows);
    CHECK(back.number(1, 0) == doctest::Approx(2.5));
    CHECK_THROWS_AS(table.col("missing"), Error);
    CHECK_THROWS_AS(table.add_row({"only-one"}), Error);
}

TEST_CASE("single-point ecdf renders exactly one step") {
    Table table;
    table.columns = {"value", "cumulative"};
    table.add_row({"5", "1"});
    const auto svg = render_plot(table, PlotKind::Ecdf);
    CHECK(svg.find("<svg") == 0);
    // One polyline with exactly two points: the run-in and the step top.
    CHECK(std::count(svg.begin(), svg.end(), 'p') > 0);
    const auto pos = svg.find("<polyline");
    REQUIRE(pos != std::string::npos);
    CHECK(svg.find("<polyline", pos + 1) == std::string::npos);
}

TEST_CASE("roc plot annotates the trapezoid auc") {
    Table table;
    table.columns = {"fpr", "tpr"};
    table.add_row({"0", "0"});
    table.add_row({"0", "1"});
    table.add_row({"1", "1"});
    const auto svg = render_plot(table, PlotKind::Roc);
    CHECK(svg.find("AUC = 1.000") != std::string::npos);
}

TEST_CASE("series overlay carries two curves and a legend") {
    Table table;
    table.columns = {"index", "measured", "predicted"};
    table.add_row({"0", "1.0", "1.1"});
    table.add_row({"1", "2.0", "1.9"});
    const auto svg = render_plot(table, PlotKind::SeriesOverlay);
    CHECK(svg.find(">measured</text>") != std::string::npos);
    CHECK(svg.find(">predicted</text>") != std::string::npos);
    std::size_t polylines = 0;
    for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos;
         pos = svg.find("<polyline", pos + 1)) {
        ++polylines;
    }
    CHECK(polylines == 2);
}

TEST_CASE("acf plot draws stems and the confidence band") {
    Table table;
    table.columns = {"lag", "correlation", "band"};
    table.add_row({"0", "1", "0.2"});
    table.add_row({"1", "-0.15", "0.2"});
    table.add_row({"2", "0.05", "0.2"});
    const auto svg = render_plot(table, PlotKind::Acf);
    // Dashed band lines above and below zero plus one stem per lag.
    CHECK(svg.find("stroke-dasharray") != std::string::npos);
    std::size_t stems = 0;
    for (std::size_t pos = svg.find("stroke-width=\"2\""); pos != std::string::npos;
         pos = svg.find("stroke-width=\"2\"", pos + 1)) {
        ++stems;
    }
    CHECK(stems == 3);
}

TEST_CASE("histogram plot draws bars and the fit curve") {
    Table table;
    table.columns = {"bin_lo", "bin_hi", "count", "fit"};
    table.add_row({"0", "1", "5", "4.5"});
    table.add_row({"1", "2", "3", "3.2"});
    const auto svg = render_plot(table, PlotKind::HistogramFit);
    std::size_t bars = 0;
    for (std::size_t pos = svg.find("<rect"); pos != std::string::npos;
         pos = svg.find("<rect", pos + 1)) {
        ++bars;
    }
    CHECK(bars == 3); // background + two bins
    CHECK(svg.find("<polyline") != std::string::npos);
}

TEST_CASE("column mismatch is a plot error") {
    Table table;
    table.columns = {"wrong", "shape"};
    table.add_row({"1", "2"});
    CHECK_THROWS_AS(render_plot(table, PlotKind::Ecdf), Error);
}

TEST_CASE("plots are byte-deterministic") {
    Table table;
    table.columns = {"x", "y"};
    for (int i = 0; i < 50; ++i) {
        table.add_row({format_double(i * 0.37), format_double(i * i * 0.001)});
    }
    CHECK(render_plot(table, PlotKind::Scatter) == render_plot(table, PlotKind::Scatter));
}

TEST_CASE("simulate twice with one seed gives identical output trees") {
    TempDir a("det-a"), b("det-b");
    const std::vector<std::string> common{"simulate", "--seed", "42", "--horizon",
                                          "60000",    "--arrival-rate", "0.05"};
    auto run_into = [&](const TempDir& dir) {
        auto args = common;
        args.push_back("--out");
        args.push_back(dir.str());
        REQUIRE(run(args) == 0);
    };
    run_into(a);
    run_into(b);
    CHECK(snapshot(a.path) == snapshot(b.path));

    TempDir c("det-c");
    auto args = common;
    args[2] = "43"; // different seed
    args.push_back("--out");
    args.push_back(c.str());
    REQUIRE(run(args) == 0);
    CHECK(snapshot(a.path) != snapshot(c.path));
}

TEST_CASE("usage errors exit with status 2") {
    CHECK(run_cli({"frobnicate"}) == 2);
    CHECK(run_cli({"simulate", "--horizon"}) == 2);
    CHECK(run_cli({}) == 2);
    CHECK(run_cli({"--help"}) == 0);
}

TEST_CASE("module errors surface with exit 2 and inputs stay untouched") {
    TempDir dir("module-err");
    const std::string blocks = dir.str("blocks.csv");
    atomic_write_file(blocks, "height,timestamp\n");
    const auto before = read_file(blocks);
    CHECK(run_cli({"explore", "--in", blocks, "--stat", "ecdf", "--attr", "size"}) == 2);
    CHECK(read_file(blocks) == before);
}

TEST_CASE("explore pipeline writes csv and svg and never mutates inputs") {
    TempDir dir("explore");
    REQUIRE(run_cli({"simulate", "--seed", "7", "--horizon", "400000", "--arrival-rate",
                     "0.05", "--out", dir.str("sim")}) == 0);
    const auto before = snapshot(dir.path / "sim");

    REQUIRE(run_cli({"explore", "--in", dir.str("sim/blocks.csv"), "--stat", "ecdf", "--attr",
                     "size", "--day-class", "weekend", "--out", dir.str("stats")}) == 0);
    CHECK(fs::exists(dir.path / "stats/ecdf_size_weekend.csv"));
    CHECK(fs::exists(dir.path / "stats/ecdf_size_weekend.svg"));

    REQUIRE(run_cli({"explore", "--in", dir.str("sim/blocks.csv"), "--stat", "expfit",
                     "--attr", "interblock", "--out", dir.str("stats")}) == 0);
    CHECK(fs::exists(dir.path / "stats/expfit_interblock.csv"));
    const auto fit = Table::from_csv(read_file(dir.path / "stats/expfit_interblock.csv"));
    CHECK(fit.number(0, fit.col("rate_per_unit")) > 0.0);

    REQUIRE(run_cli({"explore", "--in", dir.str("sim/blocks.csv"), "--stat", "consistency",
                     "--slot-min", "100", "--slot-min-b", "1000", "--out",
                     dir.str("stats")}) == 0);
    CHECK(fs::exists(dir.path / "stats/consistency.csv"));

    CHECK(snapshot(dir.path / "sim") == before);
}

TEST_CASE("ingest split writes three chronological parts") {
    TempDir dir("split");
    REQUIRE(run_cli({"simulate", "--seed", "3", "--horizon", "700000", "--arrival-rate",
                     "0.01", "--out", dir.str("sim")}) == 0);
    REQUIRE(run_cli({"ingest", "split", "--in", dir.str("sim/blocks.csv"), "--fracs",
                     "0.7,0.15,0.15", "--out", dir.str("parts")}) == 0);
    for (const char* name : {"train.csv", "test.csv", "validation.csv"}) {
        CHECK(fs::exists(dir.path / "parts" / name));
    }
    REQUIRE(run_cli({"ingest", "validate", "--in", dir.str("parts/train.csv")}) == 0);
}

TEST_CASE("forecast command emits the evaluation table") {
    TempDir dir("forecast");
    REQUIRE(run_cli({"simulate", "--seed", "11", "--horizon", "900000", "--arrival-rate",
                     "0.05", "--out", dir.str("sim")}) == 0);
    REQUIRE(run_cli({"forecast", "--in", dir.str("sim/blocks.csv"), "--target", "size",
                     "--models", "baseline,ar,arima", "--p", "2", "--q", "2", "--d", "0",
                     "--out", dir.str("fc")}) == 0);
    const auto table = Table::from_csv(read_file(dir.path / "fc/forecast_eval.csv"));
    CHECK(table.n_rows() == 3);
    const auto rmse_col = table.col("rmse");
    for (std::size_t r = 0; r < table.n_rows(); ++r) {
        CHECK(table.number(r, rmse_col) >= 0.0);
        CHECK(table.number(r, table.col("mae")) <= table.number(r, rmse_col) + 1e-12);
    }
    CHECK(fs::exists(dir.path / "fc/overlay_ar.csv"));
    CHECK(fs::exists(dir.path / "fc/overlay_ar.svg"));
}

TEST_CASE("classify command emits confusion, metrics, rocs and the model") {
    TempDir dir("classify");
    REQUIRE(run_cli({"simulate", "--seed", "13", "--horizon", "1200000", "--arrival-rate",
                     "0.02", "--out", dir.str("sim")}) == 0);
    REQUIRE(run_cli({"classify", "--in", dir.str("sim/blocks.csv"), "--model", "rusboost",
                     "--rounds", "10", "--max-depth", "3", "--top-k", "5", "--seed", "5",
                     "--out", dir.str("cls")}) == 0);
    CHECK(fs::exists(dir.path / "cls/confusion.csv"));
    CHECK(fs::exists(dir.path / "cls/metrics.csv"));
    CHECK(fs::exists(dir.path / "cls/model.json"));
    const auto metrics = Table::from_csv(read_file(dir.path / "cls/metrics.csv"));
    bool has_accuracy = false;
    for (std::size_t r = 0; r < metrics.n_rows(); ++r) {
        has_accuracy = has_accuracy || metrics.rows[r][0] == "accuracy";
    }
    CHECK(has_accuracy);
}

TEST_CASE("report bundles the dataset tables") {
    TempDir dir("report");
    REQUIRE(run_cli({"simulate", "--seed", "17", "--horizon", "900000", "--arrival-rate",
                     "0.02", "--out", dir.str("sim")}) == 0);
    REQUIRE(run_cli({"report", "--blocks", dir.str("sim/blocks.csv"), "--txs",
                     dir.str("sim/txs.csv"), "--out", dir.str("rep")}) == 0);
    CHECK(fs::exists(dir.path / "rep/table1_miner_summary.csv"));
    CHECK(fs::exists(dir.path / "rep/table2_division.csv"));
    CHECK(fs::exists(dir.path / "rep/ecdf_size_weekend.csv"));
    CHECK(fs::exists(dir.path / "rep/quartiles.csv"));
}

TEST_CASE("config file values apply and flags win") {
    TempDir dir("config");
    atomic_write_file(dir.str("run.ini"), "[simulate]\nhorizon=60000\nseed=21\n"
                                          "arrival-rate=0.02\nout=" +
                                              dir.str("from-config") + "\n");
    REQUIRE(run_cli({"--config", dir.str("run.ini"), "simulate"}) == 0);
    CHECK(fs::exists(dir.path / "from-config/blocks.csv"));

    // The flag overrides the config's seed: outputs must differ.
    REQUIRE(run_cli({"--config", dir.str("run.ini"), "simulate", "--seed", "22", "--out",
                     dir.str("flag-wins")}) == 0);
    CHECK(read_file(dir.path / "from-config/blocks.csv") !=
          read_file(dir.path / "flag-wins/blocks.csv"));
}

} // TEST_SUITE
