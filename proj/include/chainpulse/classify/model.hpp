// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef CHAINPULSE_CLASSIFY_MODEL_HPP
#define CHAINPULSE_CLASSIFY_MODEL_HPP

#include "chainpulse/classify/features.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace chainpulse::classify {

// Binary CART node; leaves carry the (weighted) class distribution.
struct TreeNode {
    int feature = -1;      // -1 marks a leaf
    double threshold = 0.0; // go left when value <= threshold
    int left = -1;
    int right = -1;
    std::vector<double> distribution; // per class, sums to 1 at leaves

    bool is_leaf() const { return feature < 0; }
};

struct Tree {
    std::vector<TreeNode> nodes; // nodes[0] is the root
    double weight = 1.0;

    const TreeNode& leaf_for(std::span<const double> row) const;
};

// Weighted Gini impurity of a class-weight histogram.
double gini_impurity(std::span<const double> class_weights);

enum class ClassifierKind { Cart, Boosted, RusBoost };

const char* to_string(ClassifierKind k);

struct ClassifierModel {
    ClassifierKind kind = ClassifierKind::Cart;
    std::vector<Tree> trees;
    std::vector<std::string> classes;
    std::vector<std::string> feature_names;
    int max_depth = 6;
    int min_leaf = 1;
    int rounds = 1;           // requested boosting rounds
    int discarded_rounds = 0; // rounds rejected for too-high weighted error
    std::uint64_t seed = 0;   // sampling seed (RUSBoost)

    nlohmann::json to_json() const;
    static ClassifierModel from_json(const nlohmann::json& j);
};

// Greedy binary CART minimizing weighted Gini impurity; thresholds are
// midpoints of consecutive distinct feature values, ties broken by lowest
// feature index then lowest threshold. Single-class data yields a one-leaf
// model (a warning case, not an error).
ClassifierModel fit_cart(const FeatureMatrix& data, int max_depth, int min_leaf);

// Multi-class adaptive boosting (SAMME) over depth-limited CART learners.
// Rounds whose weighted error reaches 1 - 1/K are discarded and the weights
// reset; a perfect round ends boosting with that tree alone. Throws
// Error("weak-learner-failed") when every round is discarded.
ClassifierModel fit_boosted(const FeatureMatrix& data, int rounds, int max_depth);

// Boosting where each round's learner trains on a class-balanced random
// undersample (every class cut to the minority count); weight updates still
// run on the full set. Bit-for-bit reproducible for a fixed seed.
ClassifierModel fit_rusboost(const FeatureMatrix& data, int rounds, int max_depth,
                             std::uint64_t seed);

struct Prediction {
    int label = 0;
    std::vector<double> scores; // per class, sums to 1
};

// Weighted average of leaf distributions; the label is the argmax with ties
// going to the first class in model.classes.
Prediction predict(const ClassifierModel& model, std::span<const double> row);

} // namespace chainpulse::classify

#endif // CHAINPULSE_CLASSIFY_MODEL_HPP
