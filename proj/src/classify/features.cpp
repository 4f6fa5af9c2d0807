// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "chainpulse/classify/features.hpp"

#include "chainpulse/util/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace chainpulse::classify {

void FeatureMatrix::push_row(std::span<const double> row, int label) {
    if (row.size() != n_features()) {
        throw Error("bad-input", "feature row arity mismatch");
    }
    values.insert(values.end(), row.begin(), row.end());
    labels.push_back(label);
}

FeatureMatrix build_feature_matrix(const BlockSeries& series, std::size_t top_k,
                                   bool include_mempool) {
    if (series.size() < 2) {
        throw Error("short-series", "need at least 2 blocks to build features");
    }
    if (top_k < 1) {
        throw Error("bad-input", "top_k must be at least 1");
    }
    const auto& blocks = series.blocks();
    const auto& gaps = series.interblock();

    // Top-k miners by block count over the usable rows; ties break by name
    // so the labeling is deterministic.
    std::map<std::string, std::size_t> counts;
    for (std::size_t i = 1; i < blocks.size(); ++i) {
        ++counts[blocks[i].miner];
    }
    std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) {
            return a.second > b.second;
        }
        return a.first < b.first;
    });

    FeatureMatrix out;
    out.feature_names = {"avg_fee_btc", "size_bytes", "tx_count", "interblock_s"};
    if (include_mempool) {
        out.feature_names.insert(out.feature_names.end(),
                                 {"mempool_tx_count", "mempool_bytes", "mempool_fee_btc"});
    }
    std::map<std::string, int> class_of;
    for (std::size_t i = 0; i < ranked.size() && i < top_k; ++i) {
        class_of[ranked[i].first] = static_cast<int>(out.classes.size());
        out.classes.push_back(ranked[i].first);
    }
    const bool need_other = ranked.size() > top_k;
    int other_class = -1;
    if (need_other) {
        other_class = static_cast<int>(out.classes.size());
        out.classes.push_back("Other");
    }

    std::vector<double> row;
    for (std::size_t i = 1; i < blocks.size(); ++i) {
        const auto& b = blocks[i];
        row.clear();
        row.push_back(b.avg_fee.to_btc());
        row.push_back(static_cast<double>(b.size));
        row.push_back(static_cast<double>(b.tx_count));
        row.push_back(static_cast<double>(gaps[i - 1]));
        if (include_mempool) {
            row.push_back(static_cast<double>(b.mempool.tx_count));
            row.push_back(static_cast<double>(b.mempool.total_bytes));
            row.push_back(b.mempool.total_fee.to_btc());
        }
        const auto it = class_of.find(b.miner);
        const int label = it != class_of.end() ? it->second : other_class;
        out.push_row(row, label);
    }
    return out;
}

FeatureSplit stratified_split(const FeatureMatrix& data, double train_frac) {
    if (!(train_frac > 0.0 && train_frac < 1.0)) {
        throw Error("bad-split", "train fraction must be in (0,1)");
    }
    std::vector<std::size_t> per_class(data.classes.size(), 0);
    for (int label : data.labels) {
        ++per_class[static_cast<std::size_t>(label)];
    }
    std::vector<std::size_t> train_quota(data.classes.size(), 0);
    for (std::size_t c = 0; c < per_class.size(); ++c) {
        train_quota[c] = static_cast<std::size_t>(
            std::floor(static_cast<double>(per_class[c]) * train_frac));
    }
    FeatureSplit split;
    split.train.feature_names = split.test.feature_names = data.feature_names;
    split.train.classes = split.test.classes = data.classes;
    std::vector<std::size_t> seen(data.classes.size(), 0);
    for (std::size_t r = 0; r < data.n_rows(); ++r) {
        const auto label = static_cast<std::size_t>(data.labels[r]);
        auto& target = seen[label] < train_quota[label] ? split.train : split.test;
        target.push_row(data.row(r), data.labels[r]);
        ++seen[label];
    }
    return split;
}

} // namespace chainpulse::classify
