// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "chainpulse/forecast/narnet.hpp"

#include "chainpulse/util/error.hpp"
#include "chainpulse/util/linalg.hpp"
#include "chainpulse/util/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace chainpulse::forecast {

namespace {

double normalize(double v, double lo, double hi) {
    if (hi <= lo) {
        return 0.0;
    }
    return 2.0 * (v - lo) / (hi - lo) - 1.0;
}

double denormalize(double v, double lo, double hi) {
    if (hi <= lo) {
        return lo;
    }
    return lo + (v + 1.0) * (hi - lo) / 2.0;
}

// Tapped-delay design matrix in original units; one row per trainable step.
struct TrainingSet {
    Matrix inputs; // n_samples x n_inputs
    std::vector<double> targets;
};

TrainingSet build_samples(std::span<const double> series, const ExogMatrix* exog, int delays,
                          int n_exog) {
    const std::size_t p = static_cast<std::size_t>(delays);
    const std::size_t n = series.size();
    const std::size_t n_inputs = p * static_cast<std::size_t>(1 + n_exog);
    TrainingSet set;
    set.inputs = Matrix(n - p, n_inputs);
    set.targets.reserve(n - p);
    for (std::size_t t = p; t < n; ++t) {
        auto row = set.inputs.row(t - p);
        std::size_t c = 0;
        for (std::size_t i = 1; i <= p; ++i) {
            row[c++] = series[t - i];
        }
        if (exog != nullptr) {
            for (const auto& col : exog->cols) {
                // Exogenous rows are pre-lagged, so row t itself is known
                // before step t; older delays walk further back.
                for (std::size_t i = 0; i < p; ++i) {
                    row[c++] = col[t - i];
                }
            }
        }
        set.targets.push_back(series[t]);
    }
    return set;
}

struct Workspace {
    std::vector<double> params; // [w1 (h x din), b1 (h), w2 (h), b2]
    int hidden = 0;
    int din = 0;

    std::size_t size() const {
        return static_cast<std::size_t>(hidden) * static_cast<std::size_t>(din) +
               2 * static_cast<std::size_t>(hidden) + 1;
    }
    double* w1() { return params.data(); }
    double* b1() { return params.data() + hidden * din; }
    double* w2() { return params.data() + hidden * din + hidden; }
    double* b2() { return params.data() + hidden * din + 2 * hidden; }
    const double* w1() const { return params.data(); }
    const double* b1() const { return params.data() + hidden * din; }
    const double* w2() const { return params.data() + hidden * din + hidden; }
    const double* b2() const { return params.data() + hidden * din + 2 * hidden; }
};

double forward(const Workspace& w, std::span<const double> input, std::vector<double>* hidden_out) {
    double y = *w.b2();
    for (int j = 0; j < w.hidden; ++j) {
        double a = w.b1()[j];
        const double* row = w.w1() + static_cast<std::size_t>(j) * w.din;
        for (int i = 0; i < w.din; ++i) {
            a += row[i] * input[static_cast<std::size_t>(i)];
        }
        const double h = std::tanh(a);
        if (hidden_out != nullptr) {
            (*hidden_out)[static_cast<std::size_t>(j)] = h;
        }
        y += w.w2()[j] * h;
    }
    return y;
}

// SSE + alpha * |params|^2 over normalized samples.
double objective(const Workspace& w, const Matrix& inputs, std::span<const double> targets,
                 double alpha) {
    double sse = 0.0;
    for (std::size_t t = 0; t < inputs.rows(); ++t) {
        const double r = forward(w, inputs.row(t), nullptr) - targets[t];
        sse += r * r;
    }
    double penalty = 0.0;
    for (double p : w.params) {
        penalty += p * p;
    }
    return sse + alpha * penalty;
}

} // namespace

double NeuralNetModel::predict_next(std::span<const double> history,
                                    const ExogMatrix* exog) const {
    const auto p = static_cast<std::size_t>(input_delays);
    if (history.size() < p) {
        throw Error("short-history", "history shorter than the input delays");
    }
    if (n_exog > 0) {
        if (exog == nullptr || exog->dims() != static_cast<std::size_t>(n_exog)) {
            throw Error("bad-exog", "model requires matching exogenous columns");
        }
        if (exog->rows() < history.size() + 1 || history.size() + 1 < p) {
            throw Error("short-history", "exogenous rows must cover history + forecast step");
        }
    }
    std::vector<double> input;
    input.reserve(static_cast<std::size_t>(n_inputs()));
    for (std::size_t i = 1; i <= p; ++i) {
        input.push_back(history[history.size() - i]);
    }
    if (n_exog > 0) {
        const std::size_t next = history.size(); // index of the predicted step
        for (const auto& col : exog->cols) {
            for (std::size_t i = 0; i < p; ++i) {
                input.push_back(col[next - i]);
            }
        }
    }
    return predict_raw(input);
}

double NeuralNetModel::predict_raw(std::span<const double> raw_inputs) const {
    if (raw_inputs.size() != static_cast<std::size_t>(n_inputs())) {
        throw Error("bad-input", "input arity does not match the network");
    }
    std::vector<double> normalized(raw_inputs.size());
    for (std::size_t i = 0; i < raw_inputs.size(); ++i) {
        normalized[i] = normalize(raw_inputs[i], input_lo[i], input_hi[i]);
    }
    double y = output_bias;
    const auto din = static_cast<std::size_t>(n_inputs());
    for (int j = 0; j < hidden_units; ++j) {
        double a = hidden_bias[static_cast<std::size_t>(j)];
        const double* row = hidden_weights.data() + static_cast<std::size_t>(j) * din;
        for (std::size_t i = 0; i < din; ++i) {
            a += row[i] * normalized[i];
        }
        y += output_weights[static_cast<std::size_t>(j)] * std::tanh(a);
    }
    return denormalize(y, output_lo, output_hi);
}

nlohmann::json NeuralNetModel::to_json() const {
    return nlohmann::json{{"kind", "narnet"},
                          {"input_delays", input_delays},
                          {"exog_delays", exog_delays},
                          {"n_exog", n_exog},
                          {"hidden_units", hidden_units},
                          {"hidden_weights", hidden_weights},
                          {"hidden_bias", hidden_bias},
                          {"output_weights", output_weights},
                          {"output_bias", output_bias},
                          {"input_lo", input_lo},
                          {"input_hi", input_hi},
                          {"output_lo", output_lo},
                          {"output_hi", output_hi},
                          {"training_log",
                           {{"iterations", training_log.iterations},
                            {"final_objective", training_log.final_objective},
                            {"final_weight_decay", training_log.final_weight_decay},
                            {"converged", training_log.converged}}}};
}

NeuralNetModel NeuralNetModel::from_json(const nlohmann::json& j) {
    NeuralNetModel m;
    m.input_delays = j.at("input_delays").get<int>();
    m.exog_delays = j.at("exog_delays").get<int>();
    m.n_exog = j.at("n_exog").get<int>();
    m.hidden_units = j.at("hidden_units").get<int>();
    m.hidden_weights = j.at("hidden_weights").get<std::vector<double>>();
    m.hidden_bias = j.at("hidden_bias").get<std::vector<double>>();
    m.output_weights = j.at("output_weights").get<std::vector<double>>();
    m.output_bias = j.at("output_bias").get<double>();
    m.input_lo = j.at("input_lo").get<std::vector<double>>();
    m.input_hi = j.at("input_hi").get<std::vector<double>>();
    m.output_lo = j.at("output_lo").get<double>();
    m.output_hi = j.at("output_hi").get<double>();
    const auto& log = j.at("training_log");
    m.training_log.iterations = log.at("iterations").get<int>();
    m.training_log.final_objective = log.at("final_objective").get<double>();
    m.training_log.final_weight_decay = log.at("final_weight_decay").get<double>();
    m.training_log.converged = log.at("converged").get<bool>();
    return m;
}

namespace {

NeuralNetModel train_impl(std::span<const double> series, const ExogMatrix* exog, int delays,
                          int hidden_units, const TrainConfig& config) {
    if (delays < 1) {
        throw Error("bad-orders", "at least one input delay is required");
    }
    if (hidden_units < 1) {
        throw Error("bad-orders", "at least one hidden unit is required");
    }
    if (series.size() <= static_cast<std::size_t>(delays + hidden_units)) {
        throw Error("short-series", "series too short for the requested network");
    }
    const int n_exog = exog == nullptr ? 0 : static_cast<int>(exog->dims());
    if (exog != nullptr) {
        exog->validate();
        if (exog->rows() != series.size() && exog->rows() != series.size() + 1) {
            throw Error("length-mismatch", "exogenous rows must match the series length");
        }
        if (n_exog == 0) {
            throw Error("bad-exog", "train_narx requires at least one exogenous column");
        }
    }

    auto set = build_samples(series, exog, delays, n_exog);
    const std::size_t n_samples = set.inputs.rows();
    const std::size_t din = set.inputs.cols();

    NeuralNetModel model;
    model.input_delays = delays;
    model.exog_delays = exog == nullptr ? 0 : delays;
    model.n_exog = n_exog;
    model.hidden_units = hidden_units;
    model.input_lo.assign(din, std::numeric_limits<double>::infinity());
    model.input_hi.assign(din, -std::numeric_limits<double>::infinity());
    for (std::size_t t = 0; t < n_samples; ++t) {
        const auto row = set.inputs.row(t);
        for (std::size_t i = 0; i < din; ++i) {
            model.input_lo[i] = std::min(model.input_lo[i], row[i]);
            model.input_hi[i] = std::max(model.input_hi[i], row[i]);
        }
    }
    model.output_lo = *std::min_element(set.targets.begin(), set.targets.end());
    model.output_hi = *std::max_element(set.targets.begin(), set.targets.end());

    Matrix inputs(n_samples, din);
    std::vector<double> targets(n_samples);
    for (std::size_t t = 0; t < n_samples; ++t) {
        const auto src = set.inputs.row(t);
        auto dst = inputs.row(t);
        for (std::size_t i = 0; i < din; ++i) {
            dst[i] = normalize(src[i], model.input_lo[i], model.input_hi[i]);
        }
        targets[t] = normalize(set.targets[t], model.output_lo, model.output_hi);
    }

    Workspace w;
    w.hidden = hidden_units;
    w.din = static_cast<int>(din);
    w.params.resize(w.size());
    Rng rng(config.seed);
    for (auto& p : w.params) {
        p = rng.uniform(-0.7, 0.7);
    }

    const std::size_t np = w.size();
    double alpha = config.weight_decay;
    double f = objective(w, inputs, targets, alpha);
    double lambda = 1e-2;
    bool converged = false;
    int iterations = 0;

    Matrix jac(n_samples, np);
    std::vector<double> residuals(n_samples);
    std::vector<double> hidden(static_cast<std::size_t>(hidden_units));

    for (int iter = 0; iter < config.max_iterations; ++iter) {
        ++iterations;
        // Residuals and analytic Jacobian.
        for (std::size_t t = 0; t < n_samples; ++t) {
            const auto input = inputs.row(t);
            const double y = forward(w, input, &hidden);
            residuals[t] = y - targets[t];
            auto row = jac.row(t);
            for (int j = 0; j < hidden_units; ++j) {
                const double h = hidden[static_cast<std::size_t>(j)];
                const double gate = w.w2()[j] * (1.0 - h * h);
                double* w1_row = row.data() + static_cast<std::size_t>(j) * din;
                for (std::size_t i = 0; i < din; ++i) {
                    w1_row[i] = gate * input[i];
                }
                row[static_cast<std::size_t>(hidden_units) * din + static_cast<std::size_t>(j)] =
                    gate;
                row[static_cast<std::size_t>(hidden_units) * din +
                    static_cast<std::size_t>(hidden_units) + static_cast<std::size_t>(j)] = h;
            }
            row[np - 1] = 1.0;
        }

        Matrix h_mat(np, np);
        std::vector<double> grad(np, 0.0);
        for (std::size_t a = 0; a < np; ++a) {
            for (std::size_t b = a; b < np; ++b) {
                double acc = 0.0;
                for (std::size_t t = 0; t < n_samples; ++t) {
                    acc += jac.at(t, a) * jac.at(t, b);
                }
                h_mat.at(a, b) = acc;
                h_mat.at(b, a) = acc;
            }
            double acc = 0.0;
            for (std::size_t t = 0; t < n_samples; ++t) {
                acc += jac.at(t, a) * residuals[t];
            }
            grad[a] = acc + alpha * w.params[a];
            h_mat.at(a, a) += alpha;
        }

        bool stepped = false;
        while (lambda <= 1e10) {
            Matrix damped = h_mat;
            for (std::size_t a = 0; a < np; ++a) {
                damped.at(a, a) += lambda;
            }
            std::vector<double> neg(grad);
            for (auto& v : neg) {
                v = -v;
            }
            std::vector<double> delta;
            try {
                delta = solve_linear(damped, std::move(neg));
            } catch (const Error&) {
                lambda *= 10.0;
                continue;
            }
            Workspace trial = w;
            for (std::size_t a = 0; a < np; ++a) {
                trial.params[a] += delta[a];
            }
            const double f_trial = objective(trial, inputs, targets, alpha);
            if (std::isfinite(f_trial) && f_trial <= f) {
                const double drop = f - f_trial;
                w = std::move(trial);
                f = f_trial;
                lambda = std::max(lambda / 5.0, 1e-12);
                stepped = true;
                if (drop <= config.tolerance * std::max(f, 1e-300)) {
                    converged = true;
                }
                break;
            }
            lambda *= 10.0;
        }
        if (!stepped) {
            converged = true; // no downhill direction left
            break;
        }
        if (converged) {
            break;
        }
        if (config.evidence_updates && (iter + 1) % 5 == 0) {
            // MacKay-style update: gamma effective parameters, then
            // alpha = gamma / (2 Ew). Trace via solves against the
            // regularized Gauss-Newton Hessian.
            double weight_norm = 0.0;
            for (double p : w.params) {
                weight_norm += p * p;
            }
            if (weight_norm > 1e-12) {
                double trace = 0.0;
                for (std::size_t a = 0; a < np; ++a) {
                    std::vector<double> e(np, 0.0);
                    e[a] = 1.0;
                    const auto col = solve_linear(h_mat, std::move(e));
                    trace += col[a];
                }
                const double gamma = static_cast<double>(np) - alpha * trace;
                const double alpha_new =
                    std::clamp(gamma / weight_norm, 1e-8, 1e4);
                if (std::isfinite(alpha_new) && alpha_new > 0.0) {
                    alpha = alpha_new;
                    f = objective(w, inputs, targets, alpha);
                }
            }
        }
    }

    model.hidden_weights.assign(w.w1(), w.w1() + static_cast<std::size_t>(hidden_units) * din);
    model.hidden_bias.assign(w.b1(), w.b1() + hidden_units);
    model.output_weights.assign(w.w2(), w.w2() + hidden_units);
    model.output_bias = *w.b2();
    model.training_log.iterations = iterations;
    model.training_log.final_objective = f;
    model.training_log.final_weight_decay = alpha;
    model.training_log.converged = converged;
    return model;
}

} // namespace

NeuralNetModel train_nar(std::span<const double> series, int delays, int hidden_units,
                         const TrainConfig& config) {
    return train_impl(series, nullptr, delays, hidden_units, config);
}

NeuralNetModel train_narx(std::span<const double> series, const ExogMatrix& exog, int delays,
                          int hidden_units, const TrainConfig& config) {
    return train_impl(series, &exog, delays, hidden_units, config);
}

} // namespace chainpulse::forecast
