// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef CHAINPULSE_FORECAST_ARIMA_HPP
#define CHAINPULSE_FORECAST_ARIMA_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace chainpulse::forecast {

// Exogenous regressors, one column per input dimension. Row i must already
// be lagged: it holds only information known before series value i is
// observed. lagged_exog() builds such a matrix from contemporaneous columns.
struct ExogMatrix {
    std::vector<std::string> names;
    std::vector<std::vector<double>> cols;

    std::size_t rows() const { return cols.empty() ? 0 : cols.front().size(); }
    std::size_t dims() const { return cols.size(); }
    void validate() const;
};

// Shifts contemporaneous columns down by one row (row i becomes x_{i-1}) and
// appends one extra row at the end, so the result has rows() == input rows
// + 1: rows 0..n-1 align with the series for fitting and the final row
// serves a one-step forecast. Row 0 is a copy of x_0.
ExogMatrix lagged_exog(const ExogMatrix& contemporaneous);

// ARMA model of the d-times differenced, regression-adjusted series, in mean
// form with the expanded-sum sign convention:
//   z_t = w_t - mu,   w = diff^d(y_t - beta . x'_t)   (x' pre-lagged)
//   eps_t = z_t - sum_i phi_i z_{t-i} - sum_j theta_j eps_{t-j}
struct ArimaModel {
    int p = 0, d = 0, q = 0;
    std::vector<double> ar;   // phi
    std::vector<double> ma;   // theta
    double intercept = 0.0;   // mu of the differenced series
    std::vector<double> exog; // beta, empty for plain ARIMA
    double noise_variance = 0.0;
    std::string fitted_on;
    bool converged = true;
    bool stationary_warning = false; // AR roots at or inside the unit circle
    bool rank_warning = false;       // collinear exogenous columns

    bool has_exog() const { return !exog.empty(); }
    // Observations consumed before the first scorable prediction.
    std::size_t warmup() const;

    nlohmann::json to_json() const;
    static ArimaModel from_json(const nlohmann::json& j);
};

// Yule-Walker AR(p) fit on the demeaned series (intercept = sample mean).
// Throws Error("constant-series") when the autocorrelation system is
// singular and Error("short-series") when length <= p + 1.
ArimaModel fit_ar(std::span<const double> series, int p);

// Conditional-sum-of-squares ARIMA fit: apply the d-th difference, then
// minimize the summed squared innovations over (phi, theta, intercept) by
// Levenberg-Marquardt, innovations fixed to zero for t < max(p, q).
// Converged when the relative objective change drops below 1e-8, capped at
// 500 iterations (non-convergence keeps the best iterate and clears the
// `converged` flag).
ArimaModel fit_arima(std::span<const double> series, int p, int d, int q);

// Regression with ARMA errors: y_i = mu + beta . x_{i-1} + eta_i where
// diff^d(eta) follows the ARMA recursion above; jointly estimated by the
// same CSS objective.
ArimaModel fit_arimax(std::span<const double> series, const ExogMatrix& exog, int p, int d,
                      int q);

// One-step-ahead prediction from observed history (rolling origin). For
// exogenous models `exog` must carry one row per history value.
double forecast_one_step(const ArimaModel& model, std::span<const double> history,
                         const ExogMatrix* exog = nullptr);

// Constant predictor at the training mean; the unpredictability yardstick.
ArimaModel naive_mean_baseline(std::span<const double> train);

// True when all roots of 1 - phi_1 z - ... - phi_p z^p lie outside the unit
// circle (Schur-Cohn test, no root extraction).
bool ar_is_stationary(std::span<const double> phi);

struct OrderSuggestion {
    int p = 0;
    int q = 0;
};

// Largest lags where PACF (for p) and ACF (for q) still leave the
// +-1.96/sqrt(N) band.
OrderSuggestion suggest_orders(std::span<const double> series, std::size_t max_lag);

} // namespace chainpulse::forecast

#endif // CHAINPULSE_FORECAST_ARIMA_HPP
