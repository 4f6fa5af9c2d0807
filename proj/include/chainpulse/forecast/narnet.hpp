// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef CHAINPULSE_FORECAST_NARNET_HPP
#define CHAINPULSE_FORECAST_NARNET_HPP

#include "chainpulse/forecast/arima.hpp"

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

namespace chainpulse::forecast {

struct TrainConfig {
    std::uint64_t seed = 1;
    int max_iterations = 200;
    double weight_decay = 1e-3; // alpha in SSE + alpha * sum(w^2)
    bool evidence_updates = false; // re-estimate alpha from the data
    double tolerance = 1e-9; // relative objective change
};

struct TrainingLog {
    int iterations = 0;
    double final_objective = 0.0;
    double final_weight_decay = 0.0;
    bool converged = false;
};

// Single-hidden-layer network over tapped delays: inputs are the previous
// `input_delays` series values plus, for NARX, the same number of rows per
// exogenous column (pre-lagged rows, as in ExogMatrix). tanh hidden layer,
// linear output; inputs and target min-max normalized to [-1, 1]. Trained
// open loop (series-parallel) by Levenberg-Marquardt on the regularized
// squared error.
class NeuralNetModel {
public:
    int input_delays = 0;
    int exog_delays = 0; // delays per exogenous column, 0 for NAR
    int n_exog = 0;
    int hidden_units = 10;
    std::vector<double> hidden_weights; // hidden_units x n_inputs, row major
    std::vector<double> hidden_bias;    // hidden_units
    std::vector<double> output_weights; // hidden_units
    double output_bias = 0.0;
    std::vector<double> input_lo, input_hi; // per input dimension
    double output_lo = 0.0, output_hi = 0.0;
    TrainingLog training_log;

    int n_inputs() const { return input_delays + exog_delays * n_exog; }

    // Prediction for the step after `history`; for NARX `exog` must hold
    // history length + 1 pre-lagged rows (the extra row belongs to the
    // predicted step). Throws Error("short-history") when the delays do not
    // fit.
    double predict_next(std::span<const double> history, const ExogMatrix* exog = nullptr) const;

    // Forward pass over an already assembled raw input vector (series delays
    // newest-first, then per-column exogenous delays newest-first).
    double predict_raw(std::span<const double> raw_inputs) const;

    nlohmann::json to_json() const;
    static NeuralNetModel from_json(const nlohmann::json& j);
};

// Requires series length > delays + hidden_units. Deterministic for a fixed
// config; non-convergence returns the best iterate with the log flag unset.
NeuralNetModel train_nar(std::span<const double> series, int delays, int hidden_units,
                         const TrainConfig& config);

NeuralNetModel train_narx(std::span<const double> series, const ExogMatrix& exog, int delays,
                          int hidden_units, const TrainConfig& config);

} // namespace chainpulse::forecast

#endif // CHAINPULSE_FORECAST_NARNET_HPP
