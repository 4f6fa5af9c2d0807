// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef CHAINPULSE_CLASSIFY_FEATURES_HPP
#define CHAINPULSE_CLASSIFY_FEATURES_HPP

#include "chainpulse/core/types.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace chainpulse::classify {

// Dense feature rows with integer class labels. Rows are stored flat,
// stride = feature_names.size().
struct FeatureMatrix {
    std::vector<std::string> feature_names;
    std::vector<std::string> classes;
    std::vector<double> values; // n_rows * n_features
    std::vector<int> labels;    // index into `classes`

    std::size_t n_rows() const { return labels.size(); }
    std::size_t n_features() const { return feature_names.size(); }

    double at(std::size_t row, std::size_t col) const {
        return values[row * n_features() + col];
    }
    std::span<const double> row(std::size_t r) const {
        return {values.data() + r * n_features(), n_features()};
    }

    void push_row(std::span<const double> row, int label);
};

// Block features (avg_fee BTC, size bytes, tx_count, inter-block seconds)
// labeled by miner. The first block is dropped (it has no inter-block time);
// miners outside the top `top_k` by block count become "Other". With
// `include_mempool`, the three mempool-state columns are appended.
FeatureMatrix build_feature_matrix(const BlockSeries& series, std::size_t top_k,
                                   bool include_mempool = false);

// Chronological split stratified by class: per class, the first
// floor(train_frac * count) rows go to train, the rest to test. Keeps rare
// classes represented in both parts.
struct FeatureSplit {
    FeatureMatrix train;
    FeatureMatrix test;
};
FeatureSplit stratified_split(const FeatureMatrix& data, double train_frac);

} // namespace chainpulse::classify

#endif // CHAINPULSE_CLASSIFY_FEATURES_HPP
