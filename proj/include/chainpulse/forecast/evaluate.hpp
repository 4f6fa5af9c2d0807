// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef CHAINPULSE_FORECAST_EVALUATE_HPP
#define CHAINPULSE_FORECAST_EVALUATE_HPP

#include "chainpulse/forecast/arima.hpp"
#include "chainpulse/forecast/narnet.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace chainpulse::forecast {

struct ForecastEvaluation {
    double mae = 0.0;
    double rmse = 0.0;
    std::size_t n = 0;
    std::vector<double> residuals;   // e_i = y_i - prediction_i
    std::vector<double> predictions; // aligned with residuals
    std::size_t warmup = 0;          // leading test points used as history only
};

ForecastEvaluation evaluation_from_residuals(std::vector<double> residuals);

// Rolling one-step evaluation over the test span: each step is predicted
// from observed values only, no recursive feedback. The first warmup()
// points seed the recursions and are not scored. Exogenous rows must match
// the test length (pre-lagged rows, as in ExogMatrix).
ForecastEvaluation evaluate(const ArimaModel& model, std::span<const double> test,
                            const ExogMatrix* exog = nullptr);

ForecastEvaluation evaluate(const NeuralNetModel& model, std::span<const double> test,
                            const ExogMatrix* exog = nullptr);

} // namespace chainpulse::forecast

#endif // CHAINPULSE_FORECAST_EVALUATE_HPP
