// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef CHAINPULSE_CLASSIFY_METRICS_HPP
#define CHAINPULSE_CLASSIFY_METRICS_HPP

#include "chainpulse/classify/model.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace chainpulse::classify {

struct RocCurve {
    std::vector<std::pair<double, double>> points; // (FPR, TPR), (0,0) .. (1,1)
    double auc = 0.0;
};

// Threshold sweep over distinct scores, ties included simultaneously; AUC by
// the trapezoid rule. `labels` are 0/1 and both values must be present.
RocCurve roc_auc(std::span<const double> scores, std::span<const int> labels);

struct ClassifierEvaluation {
    std::vector<std::string> classes;
    std::vector<std::vector<std::size_t>> confusion; // rows = true, cols = predicted
    double accuracy = 0.0;
    double sensitivity = 0.0; // macro-averaged TPR over classes with support
    double miss_rate = 0.0;   // 1 - sensitivity, by construction
    std::vector<double> per_class_tpr;
    std::vector<double> per_class_auc; // one-vs-rest; NaN without both labels
    std::vector<RocCurve> per_class_roc;
};

// Confusion matrix in model class order plus the summary metrics. Test
// labels must be covered by the model's classes.
ClassifierEvaluation evaluate_classifier(const ClassifierModel& model,
                                         const FeatureMatrix& test);

} // namespace chainpulse::classify

#endif // CHAINPULSE_CLASSIFY_METRICS_HPP
