// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "chainpulse/forecast/evaluate.hpp"

#include "chainpulse/util/error.hpp"

#include <algorithm>
#include <cmath>

namespace chainpulse::forecast {

ForecastEvaluation evaluation_from_residuals(std::vector<double> residuals) {
    if (residuals.empty()) {
        throw Error("empty-test", "no predictions to evaluate");
    }
    ForecastEvaluation eval;
    eval.n = residuals.size();
    double abs_sum = 0.0;
    double sq_sum = 0.0;
    for (double e : residuals) {
        abs_sum += std::abs(e);
        sq_sum += e * e;
    }
    eval.mae = abs_sum / static_cast<double>(eval.n);
    eval.rmse = std::sqrt(sq_sum / static_cast<double>(eval.n));
    eval.residuals = std::move(residuals);
    return eval;
}

ForecastEvaluation evaluate(const ArimaModel& model, std::span<const double> test,
                            const ExogMatrix* exog) {
    if (model.has_exog()) {
        if (exog == nullptr || exog->dims() != model.exog.size()) {
            throw Error("bad-exog", "model requires matching exogenous columns");
        }
        if (exog->rows() != test.size() && exog->rows() != test.size() + 1) {
            throw Error("length-mismatch", "exogenous rows must match the test length");
        }
    }
    const std::size_t warmup = model.warmup();
    if (test.size() <= warmup) {
        throw Error("empty-test", "test span shorter than the model warm-up");
    }

    // Forward pass over the test span: predict step t from observations
    // before t, then absorb the observed value. Innovations are zero for the
    // first max(p,q) differenced values, exactly as in fitting, so this
    // matches forecast_one_step() on every prefix.
    const auto start = static_cast<std::size_t>(std::max(model.p, model.q));
    std::vector<double> levels; // last value of each difference level
    std::vector<double> z;      // differenced, mean-adjusted history
    std::vector<double> eps;    // innovations
    std::vector<double> residuals;
    std::vector<double> predictions;

    auto regression_part = [&](std::size_t t) {
        double acc = 0.0;
        for (std::size_t k = 0; k < model.exog.size(); ++k) {
            acc += model.exog[k] * exog->cols[k][t];
        }
        return acc;
    };

    for (std::size_t t = 0; t < test.size(); ++t) {
        if (t >= warmup) {
            double z_next = 0.0;
            const std::size_t m = z.size();
            for (int i = 1; i <= model.p; ++i) {
                z_next += model.ar[static_cast<std::size_t>(i - 1)] * z[m - static_cast<std::size_t>(i)];
            }
            for (int j = 1; j <= model.q; ++j) {
                z_next += model.ma[static_cast<std::size_t>(j - 1)] * eps[m - static_cast<std::size_t>(j)];
            }
            double prediction = z_next + model.intercept;
            for (std::size_t lvl = levels.size(); lvl-- > 0;) {
                prediction += levels[lvl];
            }
            if (model.has_exog()) {
                prediction += regression_part(t);
            }
            predictions.push_back(prediction);
            residuals.push_back(test[t] - prediction);
        }
        // Absorb the observed value.
        double v = test[t];
        if (model.has_exog()) {
            v -= regression_part(t);
        }
        double cur = v;
        bool have_w = true;
        for (int lvl = 0; lvl < model.d; ++lvl) {
            if (static_cast<std::size_t>(lvl) < levels.size()) {
                const double next = cur - levels[static_cast<std::size_t>(lvl)];
                levels[static_cast<std::size_t>(lvl)] = cur;
                cur = next;
            } else {
                levels.push_back(cur);
                have_w = false;
                break;
            }
        }
        if (!have_w) {
            continue;
        }
        const double z_t = cur - model.intercept;
        double e = 0.0;
        if (z.size() >= start) {
            e = z_t;
            for (int i = 1; i <= model.p; ++i) {
                e -= model.ar[static_cast<std::size_t>(i - 1)] *
                     z[z.size() - static_cast<std::size_t>(i)];
            }
            for (int j = 1; j <= model.q; ++j) {
                e -= model.ma[static_cast<std::size_t>(j - 1)] *
                     eps[eps.size() - static_cast<std::size_t>(j)];
            }
        }
        z.push_back(z_t);
        eps.push_back(e);
    }

    ForecastEvaluation eval = evaluation_from_residuals(std::move(residuals));
    eval.predictions = std::move(predictions);
    eval.warmup = warmup;
    return eval;
}

ForecastEvaluation evaluate(const NeuralNetModel& model, std::span<const double> test,
                            const ExogMatrix* exog) {
    const auto p = static_cast<std::size_t>(model.input_delays);
    if (model.n_exog > 0) {
        if (exog == nullptr || exog->dims() != static_cast<std::size_t>(model.n_exog)) {
            throw Error("bad-exog", "model requires matching exogenous columns");
        }
        if (exog->rows() != test.size() && exog->rows() != test.size() + 1) {
            throw Error("length-mismatch", "exogenous rows must match the test length");
        }
    }
    if (test.size() <= p) {
        throw Error("empty-test", "test span shorter than the model warm-up");
    }
    std::vector<double> residuals;
    std::vector<double> predictions;
    std::vector<double> input;
    for (std::size_t t = p; t < test.size(); ++t) {
        input.clear();
        for (std::size_t i = 1; i <= p; ++i) {
            input.push_back(test[t - i]);
        }
        if (model.n_exog > 0) {
            for (const auto& col : exog->cols) {
                for (std::size_t i = 0; i < p; ++i) {
                    input.push_back(col[t - i]);
                }
            }
        }
        const double prediction = model.predict_raw(input);
        predictions.push_back(prediction);
        residuals.push_back(test[t] - prediction);
    }
    ForecastEvaluation eval = evaluation_from_residuals(std::move(residuals));
    eval.predictions = std::move(predictions);
    eval.warmup = p;
    return eval;
}

} // namespace chainpulse::forecast
