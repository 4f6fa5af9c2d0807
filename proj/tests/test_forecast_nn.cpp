// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "chainpulse/forecast/evaluate.hpp"
#include "chainpulse/forecast/narnet.hpp"
#include "chainpulse/util/error.hpp"
#include "chainpulse/util/rng.hpp"

#include "support/arma_oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace chainpulse;
using namespace chainpulse::forecast;

namespace {

std::vector<double> slice(const std::vector<double>& v, std::size_t from, std::size_t to) {
    return {v.begin() + static_cast<std::ptrdiff_t>(from),
            v.begin() + static_cast<std::ptrdiff_t>(to)};
}

} // namespace

TEST_SUITE("forecast.narnet") {

TEST_CASE("constant series is learned exactly") {
    const std::vector<double> series(60, 3.75);
    TrainConfig cfg;
    cfg.max_iterations = 50;
    const auto model = train_nar(series, 2, 4, cfg);
    const auto eval = evaluate(model, series);
    CHECK(eval.rmse < 1e-6);
    CHECK(model.predict_next(series) == doctest::Approx(3.75).epsilon(1e-9));
}

TEST_CASE("noiseless ar(1) dynamics are learnable") {
    auto transient = [](double y0, int n) {
        std::vector<double> out;
        double y = y0;
        for (int i = 0; i < n; ++i) {
            out.push_back(y);
            y = 0.9 * y + 0.1;
        }
        return out;
    };
    const auto train = transient(10.0, 300);
    const auto test = transient(8.0, 120); // fresh start inside the train range
    TrainConfig cfg;
    cfg.weight_decay = 1e-6;
    cfg.max_iterations = 400;
    const auto model = train_nar(train, 2, 10, cfg);
    const auto eval = evaluate(model, test);
    double sd = 0.0, mu = 0.0;
    for (double v : test) {
        mu += v;
    }
    mu /= static_cast<double>(test.size());
    for (double v : test) {
        sd += (v - mu) * (v - mu);
    }
    sd = std::sqrt(sd / static_cast<double>(test.size() - 1));
    CHECK(eval.rmse < 0.01 * sd);
}

TEST_CASE("narx learns a planted identity map") {
    Rng rng(5);
    const std::size_t n = 800;
    std::vector<double> x(n, 0.0);
    for (auto& v : x) {
        v = rng.uniform(0.0, 2.0);
    }
    // y_i = x_{i-1}; pre-lagged exogenous row i holds x_{i-1}.
    std::vector<double> y(n, 0.0);
    ExogMatrix exog;
    exog.names = {"x"};
    exog.cols.emplace_back(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        exog.cols[0][i] = x[i - 1];
        y[i] = x[i - 1];
    }
    TrainConfig cfg;
    cfg.weight_decay = 1e-7;
    cfg.max_iterations = 400;
    const auto model = train_narx(y, exog, 2, 10, cfg);

    // Forecast the step after the history; append the next pre-lagged row.
    ExogMatrix with_next = exog;
    with_next.cols[0].push_back(x[n - 1]);
    const double prediction = model.predict_next(y, &with_next);
    CHECK(std::abs(prediction - x[n - 1]) < 1e-3);
}

TEST_CASE("training is deterministic for a fixed seed") {
    const auto series = test::simulate_arma(std::vector<double>{0.7}, {}, 0.0, 1.0, 300, 67);
    TrainConfig cfg;
    cfg.seed = 99;
    cfg.max_iterations = 60;
    const auto a = train_nar(series, 2, 6, cfg);
    const auto b = train_nar(series, 2, 6, cfg);
    CHECK(a.hidden_weights == b.hidden_weights);
    CHECK(a.output_weights == b.output_weights);
    CHECK(a.output_bias == b.output_bias);
    CHECK(a.to_json().dump() == b.to_json().dump());

    cfg.seed = 100;
    const auto c = train_nar(series, 2, 6, cfg);
    CHECK(a.hidden_weights != c.hidden_weights);
}

TEST_CASE("narx beats nar when the signal is exogenous") {
    Rng rng(7);
    const std::size_t n = 3000;
    std::vector<double> x(n, 0.0), y(n, 0.0);
    ExogMatrix exog;
    exog.names = {"x"};
    exog.cols.emplace_back(n, 0.0);
    double x_prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        exog.cols[0][i] = x_prev; // known before step i
        y[i] = 0.3 * (i > 0 ? y[i - 1] : 0.0) + 2.0 * x_prev + 0.3 * rng.normal();
        x_prev = rng.normal();
    }
    const std::size_t split = 2000;
    const auto y_train = slice(y, 0, split);
    const auto y_test = slice(y, split, n);
    ExogMatrix ex_train, ex_test;
    ex_train.names = ex_test.names = exog.names;
    ex_train.cols = {slice(exog.cols[0], 0, split)};
    ex_test.cols = {slice(exog.cols[0], split, n)};

    TrainConfig cfg;
    cfg.max_iterations = 150;
    const auto nar = train_nar(y_train, 2, 10, cfg);
    const auto narx = train_narx(y_train, ex_train, 2, 10, cfg);
    const auto nar_eval = evaluate(nar, y_test);
    const auto narx_eval = evaluate(narx, y_test, &ex_test);
    CHECK(narx_eval.rmse <= 0.8 * nar_eval.rmse);
}

TEST_CASE("network json round-trips bit-exactly") {
    const auto series = test::simulate_arma(std::vector<double>{0.5}, {}, 1.0, 1.0, 200, 71);
    TrainConfig cfg;
    cfg.max_iterations = 30;
    const auto model = train_nar(series, 3, 5, cfg);
    const auto back = NeuralNetModel::from_json(model.to_json());
    CHECK(back.hidden_weights == model.hidden_weights);
    CHECK(back.input_lo == model.input_lo);
    CHECK(back.predict_next(series) == model.predict_next(series));
}

TEST_CASE("short series and bad arities are rejected") {
    const std::vector<double> tiny(5, 1.0);
    TrainConfig cfg;
    CHECK_THROWS_AS(train_nar(tiny, 3, 10, cfg), Error);
    const auto series = test::simulate_arma(std::vector<double>{0.5}, {}, 0.0, 1.0, 100, 73);
    const auto model = train_nar(series, 2, 3, cfg);
    CHECK_THROWS_AS(model.predict_raw(std::vector<double>{1.0}), Error);
    CHECK_THROWS_AS(model.predict_next(std::vector<double>{1.0}), Error);
}

} // TEST_SUITE
