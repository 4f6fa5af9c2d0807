// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "chainpulse/classify/metrics.hpp"

#include "chainpulse/util/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace chainpulse::classify {

RocCurve roc_auc(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size() || scores.empty()) {
        throw Error("bad-input", "scores and labels must be equal-length and non-empty");
    }
    std::size_t n_pos = 0, n_neg = 0;
    for (int label : labels) {
        if (label == 1) {
            ++n_pos;
        } else if (label == 0) {
            ++n_neg;
        } else {
            throw Error("bad-input", "labels must be 0 or 1");
        }
    }
    if (n_pos == 0 || n_neg == 0) {
        throw Error("single-class", "ROC needs both label values present");
    }

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) {
            return scores[a] > scores[b];
        }
        return a < b;
    });

    RocCurve curve;
    curve.points.emplace_back(0.0, 0.0);
    std::size_t tp = 0, fp = 0;
    double auc = 0.0;
    double prev_fpr = 0.0, prev_tpr = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        // Equal scores enter together.
        std::size_t j = i;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) {
            tp += static_cast<std::size_t>(labels[order[j]] == 1);
            fp += static_cast<std::size_t>(labels[order[j]] == 0);
            ++j;
        }
        const double fpr = static_cast<double>(fp) / static_cast<double>(n_neg);
        const double tpr = static_cast<double>(tp) / static_cast<double>(n_pos);
        auc += (fpr - prev_fpr) * (tpr + prev_tpr) / 2.0;
        curve.points.emplace_back(fpr, tpr);
        prev_fpr = fpr;
        prev_tpr = tpr;
        i = j;
    }
    curve.auc = auc;
    return curve;
}

ClassifierEvaluation evaluate_classifier(const ClassifierModel& model,
                                         const FeatureMatrix& test) {
    if (test.n_rows() == 0) {
        throw Error("empty-features", "test set is empty");
    }
    if (test.classes != model.classes) {
        // Allow a test matrix whose label space is a prefix-compatible
        // subset only when the names match positionally.
        for (int label : test.labels) {
            if (label < 0 || static_cast<std::size_t>(label) >= test.classes.size() ||
                std::find(model.classes.begin(), model.classes.end(),
                          test.classes[static_cast<std::size_t>(label)]) ==
                    model.classes.end()) {
                throw Error("unknown-label", "test labels must be covered by the model classes");
            }
        }
    }

    const std::size_t k = model.classes.size();
    ClassifierEvaluation eval;
    eval.classes = model.classes;
    eval.confusion.assign(k, std::vector<std::size_t>(k, 0));

    // Map test label indices onto model class indices by name.
    std::vector<int> remap(test.classes.size(), -1);
    for (std::size_t c = 0; c < test.classes.size(); ++c) {
        const auto it = std::find(model.classes.begin(), model.classes.end(), test.classes[c]);
        remap[c] = it == model.classes.end() ? -1 : static_cast<int>(it - model.classes.begin());
    }

    std::vector<std::vector<double>> scores(k); // per class, per row
    std::vector<std::vector<int>> one_vs_rest(k);
    std::size_t correct = 0;
    for (std::size_t r = 0; r < test.n_rows(); ++r) {
        const int truth = remap[static_cast<std::size_t>(test.labels[r])];
        if (truth < 0) {
            throw Error("unknown-label", "test labels must be covered by the model classes");
        }
        const auto p = predict(model, test.row(r));
        eval.confusion[static_cast<std::size_t>(truth)][static_cast<std::size_t>(p.label)] += 1;
        correct += static_cast<std::size_t>(p.label == truth);
        for (std::size_t c = 0; c < k; ++c) {
            scores[c].push_back(p.scores[c]);
            one_vs_rest[c].push_back(static_cast<int>(static_cast<std::size_t>(truth) == c));
        }
    }

    eval.accuracy = static_cast<double>(correct) / static_cast<double>(test.n_rows());
    eval.per_class_tpr.assign(k, 0.0);
    double tpr_sum = 0.0;
    std::size_t supported = 0;
    for (std::size_t c = 0; c < k; ++c) {
        const auto support = std::accumulate(eval.confusion[c].begin(), eval.confusion[c].end(),
                                             std::size_t{0});
        if (support == 0) {
            eval.per_class_tpr[c] = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        eval.per_class_tpr[c] =
            static_cast<double>(eval.confusion[c][c]) / static_cast<double>(support);
        tpr_sum += eval.per_class_tpr[c];
        ++supported;
    }
    eval.sensitivity = supported > 0 ? tpr_sum / static_cast<double>(supported) : 0.0;
    eval.miss_rate = 1.0 - eval.sensitivity;

    eval.per_class_auc.assign(k, std::numeric_limits<double>::quiet_NaN());
    eval.per_class_roc.resize(k);
    for (std::size_t c = 0; c < k; ++c) {
        const bool has_pos = std::find(one_vs_rest[c].begin(), one_vs_rest[c].end(), 1) !=
                             one_vs_rest[c].end();
        const bool has_neg = std::find(one_vs_rest[c].begin(), one_vs_rest[c].end(), 0) !=
                             one_vs_rest[c].end();
        if (!has_pos || !has_neg) {
            continue;
        }
        eval.per_class_roc[c] = roc_auc(scores[c], one_vs_rest[c]);
        eval.per_class_auc[c] = eval.per_class_roc[c].auc;
    }
    return eval;
}

} // namespace chainpulse::classify
