// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "chainpulse/explore/acf.hpp"
#include "chainpulse/forecast/arima.hpp"
#include "chainpulse/forecast/evaluate.hpp"
#include "chainpulse/util/error.hpp"
#include "chainpulse/util/rng.hpp"

#include "support/arma_oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace chainpulse;
using namespace chainpulse::forecast;
using test::simulate_arma;

TEST_SUITE("forecast.arima") {

TEST_CASE("ar(1) coefficient equals the lag-1 autocorrelation") {
    const auto series = simulate_arma(std::vector<double>{0.6}, {}, 5.0, 1.0, 4000, 17);
    const auto model = fit_ar(series, 1);
    const auto r = explore::acf(series, 1);
    CHECK(model.ar[0] == doctest::Approx(r.values[1]).epsilon(1e-12));
    CHECK(model.ar[0] == doctest::Approx(0.6).epsilon(0.1));
    CHECK(model.intercept == doctest::Approx(5.0).epsilon(0.05));
}

TEST_CASE("yule-walker recovers a planted ar(2)") {
    const std::vector<double> phi{0.5, -0.3};
    const auto series = simulate_arma(phi, {}, 0.0, 1.0, 10'000, 3);
    const auto model = fit_ar(series, 2);
    CHECK(std::abs(model.ar[0] - 0.5) < 0.05);
    CHECK(std::abs(model.ar[1] + 0.3) < 0.05);
    CHECK_FALSE(model.stationary_warning);
}

TEST_CASE("pure ar orders recover their coefficients across seeds") {
    // Coefficient-recovery property on the orders where +-0.05 clears the
    // information bound; the mixed ARMA case is the acceptance suite's
    // documented statistical-limit criterion.
    int good_ar1 = 0, good_ar2 = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto one = simulate_arma(std::vector<double>{0.6}, {}, 0.0, 1.0, 10'000, 300 + seed);
        good_ar1 += std::abs(fit_ar(one, 1).ar[0] - 0.6) < 0.05;
        const auto two =
            simulate_arma(std::vector<double>{0.5, -0.3}, {}, 0.0, 1.0, 10'000, 400 + seed);
        const auto m2 = fit_ar(two, 2);
        good_ar2 += std::abs(m2.ar[0] - 0.5) < 0.05 && std::abs(m2.ar[1] + 0.3) < 0.05;
    }
    CHECK(good_ar1 >= 19);
    CHECK(good_ar2 >= 19);
}

TEST_CASE("constant series cannot be fit") {
    const std::vector<double> constant(100, 2.5);
    CHECK_THROWS_AS(fit_ar(constant, 1), Error);
}

TEST_CASE("order (0,0,0) reduces to the intercept-only mean model") {
    const std::vector<double> series{1.0, 2.0, 3.0, 4.0, 6.0};
    const auto model = fit_arima(series, 0, 0, 0);
    CHECK(model.intercept == doctest::Approx(3.2).epsilon(1e-9));
    CHECK(forecast_one_step(model, series) == doctest::Approx(3.2).epsilon(1e-9));
}

TEST_CASE("css recovers a planted arma(2,2)") {
    const std::vector<double> phi{0.4, 0.2};
    const std::vector<double> theta{0.3, -0.2};
    const auto series = simulate_arma(phi, theta, 0.0, 1.0, 10'000, 11);
    const auto model = fit_arima(series, 2, 0, 2);
    CHECK(std::abs(model.ar[0] - 0.4) < 0.05);
    CHECK(std::abs(model.ar[1] - 0.2) < 0.05);
    CHECK(std::abs(model.ma[0] - 0.3) < 0.05);
    CHECK(std::abs(model.ma[1] + 0.2) < 0.05);
    CHECK(model.noise_variance == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("first difference absorbs a linear trend") {
    std::vector<double> trend;
    for (int i = 0; i < 400; ++i) {
        trend.push_back(3.0 + 0.5 * i);
    }
    const auto model = fit_arima(trend, 0, 1, 0);
    CHECK(model.intercept == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(model.noise_variance < 1e-18);
    CHECK(forecast_one_step(model, trend) ==
          doctest::Approx(3.0 + 0.5 * 400).epsilon(1e-9));
}

TEST_CASE("zero exogenous column leaves the arima fit untouched") {
    const auto series = simulate_arma(std::vector<double>{0.5}, std::vector<double>{0.2}, 1.0,
                                      1.0, 2000, 23);
    ExogMatrix exog;
    exog.names = {"null"};
    exog.cols = {std::vector<double>(series.size(), 0.0)};
    const auto with = fit_arimax(series, exog, 1, 0, 1);
    const auto without = fit_arima(series, 1, 0, 1);
    CHECK(std::abs(with.exog[0]) < 1e-9);
    CHECK(std::abs(with.ar[0] - without.ar[0]) < 1e-6);
    CHECK(std::abs(with.ma[0] - without.ma[0]) < 1e-6);
    CHECK(std::abs(with.intercept - without.intercept) < 1e-6);
    CHECK(with.rank_warning); // zero column is rank deficient by definition
}

TEST_CASE("planted linear exogenous dependence is recovered") {
    Rng rng(29);
    const std::size_t n = 10'000;
    std::vector<double> x(n + 1, 0.0);
    for (auto& v : x) {
        v = rng.normal();
    }
    // y_i = 2 x_{i-1} + noise; pre-lagged exogenous row i holds x_{i-1}.
    std::vector<double> y(n, 0.0);
    ExogMatrix exog;
    exog.names = {"x"};
    exog.cols.emplace_back(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        exog.cols[0][i] = x[i]; // x index shifted: row i is known before step i
        y[i] = 2.0 * x[i] + 0.5 * rng.normal();
    }
    const auto model = fit_arimax(y, exog, 1, 0, 0);
    CHECK(std::abs(model.exog[0] - 2.0) < 0.1);
    CHECK_FALSE(model.rank_warning);
}

TEST_CASE("duplicated exogenous columns raise the rank warning") {
    const auto series = simulate_arma(std::vector<double>{0.4}, {}, 0.0, 1.0, 500, 31);
    Rng rng(37);
    std::vector<double> x(series.size());
    for (auto& v : x) {
        v = rng.normal();
    }
    ExogMatrix exog;
    exog.names = {"a", "b"};
    exog.cols = {x, x};
    const auto model = fit_arimax(series, exog, 1, 0, 0);
    CHECK(model.rank_warning);
}

TEST_CASE("one-step forecast follows the ar recursion") {
    ArimaModel model;
    model.p = 1;
    model.ar = {0.5};
    model.intercept = 0.0;
    const std::vector<double> history{0.0, 0.5, 2.0};
    CHECK(forecast_one_step(model, history) == doctest::Approx(1.0).epsilon(1e-12));

    ArimaModel constant;
    constant.intercept = 7.25;
    CHECK(forecast_one_step(constant, history) == doctest::Approx(7.25).epsilon(1e-12));
}

TEST_CASE("rolling evaluation equals repeated one-step forecasts") {
    const auto series = simulate_arma(std::vector<double>{0.5, -0.2},
                                      std::vector<double>{0.3}, 2.0, 1.0, 60, 41);
    const auto model = fit_arima(series, 2, 0, 1);
    const auto eval = evaluate(model, series);
    const std::size_t warmup = model.warmup();
    REQUIRE(eval.predictions.size() == series.size() - warmup);
    for (std::size_t t = warmup; t < series.size(); ++t) {
        const std::span<const double> prefix(series.data(), t);
        const double direct = forecast_one_step(model, prefix);
        CHECK(eval.predictions[t - warmup] == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("rolling evaluation matches one-step forecasts with differencing and exog") {
    Rng rng(83);
    const std::size_t n = 50;
    std::vector<double> y(n, 0.0);
    ExogMatrix exog;
    exog.names = {"x"};
    exog.cols.emplace_back(n, 0.0);
    double level = 10.0;
    for (std::size_t i = 0; i < n; ++i) {
        exog.cols[0][i] = rng.normal();
        level += 0.4 + rng.normal();
        y[i] = level + 1.5 * exog.cols[0][i];
    }
    const auto model = fit_arimax(y, exog, 1, 1, 1);
    const auto eval = evaluate(model, y, &exog);
    const std::size_t warmup = model.warmup();
    REQUIRE(eval.predictions.size() == n - warmup);
    for (std::size_t t = warmup; t < n; ++t) {
        const std::span<const double> prefix(y.data(), t);
        ExogMatrix head;
        head.names = exog.names;
        head.cols = {std::vector<double>(exog.cols[0].begin(),
                                         exog.cols[0].begin() + static_cast<std::ptrdiff_t>(t) + 1)};
        const double direct = forecast_one_step(model, prefix, &head);
        CHECK(eval.predictions[t - warmup] == doctest::Approx(direct).epsilon(1e-9));
    }

    const auto plain = fit_arima(y, 0, 1, 0);
    const auto plain_eval = evaluate(plain, y);
    for (std::size_t t = plain.warmup(); t < n; ++t) {
        const std::span<const double> prefix(y.data(), t);
        CHECK(plain_eval.predictions[t - plain.warmup()] ==
              doctest::Approx(forecast_one_step(plain, prefix)).epsilon(1e-9));
    }
}

TEST_CASE("error metrics match hand computation") {
    const auto eval = evaluation_from_residuals({1.0, -1.0, 2.0});
    CHECK(eval.mae == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(eval.rmse == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    const auto perfect = evaluation_from_residuals({0.0, 0.0});
    CHECK(perfect.mae == 0.0);
    CHECK(perfect.rmse == 0.0);

    const auto single = evaluation_from_residuals({-3.5});
    CHECK(single.mae == doctest::Approx(3.5));
    CHECK(single.rmse == doctest::Approx(3.5));
}

TEST_CASE("rmse dominates mae for random residual sets") {
    Rng rng(43);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> residuals;
        const auto n = 1 + rng.below(40);
        for (std::uint64_t i = 0; i < n; ++i) {
            residuals.push_back(rng.uniform(-10.0, 10.0));
        }
        const auto eval = evaluation_from_residuals(residuals);
        CHECK(eval.rmse >= eval.mae - 1e-12);
    }
}

TEST_CASE("adding a constant shifts only the intercept") {
    const auto series = simulate_arma(std::vector<double>{0.5, -0.2},
                                      std::vector<double>{0.3}, 0.0, 1.0, 3000, 47);
    std::vector<double> shifted(series);
    for (auto& v : shifted) {
        v += 100.0;
    }
    const auto base = fit_arima(series, 2, 0, 1);
    const auto moved = fit_arima(shifted, 2, 0, 1);
    CHECK(std::abs(base.ar[0] - moved.ar[0]) < 1e-6);
    CHECK(std::abs(base.ar[1] - moved.ar[1]) < 1e-6);
    CHECK(std::abs(base.ma[0] - moved.ma[0]) < 1e-6);
    CHECK(moved.intercept - base.intercept == doctest::Approx(100.0).epsilon(1e-6));

    const auto yw_base = fit_ar(series, 2);
    const auto yw_moved = fit_ar(shifted, 2);
    CHECK(std::abs(yw_base.ar[0] - yw_moved.ar[0]) < 1e-9);
    CHECK(std::abs(yw_base.ar[1] - yw_moved.ar[1]) < 1e-9);
    CHECK(yw_moved.intercept - yw_base.intercept == doctest::Approx(100.0).epsilon(1e-9));
}

TEST_CASE("forecast is affine in the history") {
    const auto series = simulate_arma(std::vector<double>{0.6, -0.1},
                                      std::vector<double>{0.25}, 1.0, 1.0, 200, 53);
    const auto model = fit_arima(series, 2, 0, 1);
    const double a = 2.5;
    const double b = -7.0;
    ArimaModel transformed = model;
    transformed.intercept = a * model.intercept + b;
    std::vector<double> scaled(series);
    for (auto& v : scaled) {
        v = a * v + b;
    }
    const double direct = forecast_one_step(model, series);
    const double via_transform = forecast_one_step(transformed, scaled);
    CHECK(via_transform == doctest::Approx(a * direct + b).epsilon(1e-9));
}

TEST_CASE("naive baseline predicts the training mean") {
    const std::vector<double> train{1.0, 2.0, 3.0};
    const auto baseline = naive_mean_baseline(train);
    CHECK(forecast_one_step(baseline, train) == doctest::Approx(2.0));
    const std::vector<double> other{42.0, -13.0, 0.0, 8.0};
    CHECK(forecast_one_step(baseline, other) == doctest::Approx(2.0));
}

TEST_CASE("stationarity test matches known regions") {
    CHECK(ar_is_stationary(std::vector<double>{0.5}));
    CHECK_FALSE(ar_is_stationary(std::vector<double>{1.0}));
    CHECK_FALSE(ar_is_stationary(std::vector<double>{1.2}));
    CHECK(ar_is_stationary(std::vector<double>{0.5, -0.3}));
    CHECK_FALSE(ar_is_stationary(std::vector<double>{0.9, 0.2}));
    CHECK(ar_is_stationary(std::vector<double>{}));
}

TEST_CASE("order suggestion tracks an ar(2) signature") {
    const auto series = simulate_arma(std::vector<double>{0.6, -0.3}, {}, 0.0, 1.0, 8000, 59);
    const auto s = suggest_orders(series, 12);
    CHECK(s.p >= 2);
    CHECK(s.p <= 4);
}

TEST_CASE("arima model json round-trips") {
    const auto series = simulate_arma(std::vector<double>{0.5}, std::vector<double>{0.2}, 3.0,
                                      1.0, 500, 61);
    auto model = fit_arima(series, 1, 0, 1);
    model.fitted_on = "unit-test";
    const auto j = model.to_json();
    const auto back = ArimaModel::from_json(j);
    CHECK(back.ar == model.ar);
    CHECK(back.ma == model.ma);
    CHECK(back.intercept == model.intercept);
    CHECK(back.noise_variance == model.noise_variance);
    CHECK(back.fitted_on == model.fitted_on);
}

} // TEST_SUITE
