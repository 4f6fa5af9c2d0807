// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "chainpulse/classify/model.hpp"

#include "chainpulse/util/error.hpp"
#include "chainpulse/util/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

namespace chainpulse::classify {

namespace {

constexpr double kPerfectRoundWeight = 30.0; // ~ln(1e13), dominates any vote

struct TreeBuilder {
    const FeatureMatrix& data;
    std::span<const double> weights;
    int max_depth;
    int min_leaf;
    std::vector<TreeNode> nodes;

    std::vector<double> class_weights(std::span<const std::size_t> rows) const {
        std::vector<double> counts(data.classes.size(), 0.0);
        for (std::size_t r : rows) {
            counts[static_cast<std::size_t>(data.labels[r])] += weights[r];
        }
        return counts;
    }

    int make_leaf(const std::vector<double>& counts) {
        TreeNode node;
        const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
        node.distribution.resize(counts.size());
        if (total > 0.0) {
            for (std::size_t c = 0; c < counts.size(); ++c) {
                node.distribution[c] = counts[c] / total;
            }
        } else {
            std::fill(node.distribution.begin(), node.distribution.end(),
                      1.0 / static_cast<double>(counts.size()));
        }
        nodes.push_back(std::move(node));
        return static_cast<int>(nodes.size() - 1);
    }

    int build(std::vector<std::size_t> rows, int depth) {
        const auto counts = class_weights(rows);
        const double node_gini = gini_impurity(counts);
        if (node_gini == 0.0 || depth >= max_depth ||
            rows.size() < 2 * static_cast<std::size_t>(min_leaf)) {
            return make_leaf(counts);
        }

        const double total_weight = std::accumulate(counts.begin(), counts.end(), 0.0);
        int best_feature = -1;
        double best_threshold = 0.0;
        double best_score = node_gini; // require a strict impurity decrease
        for (std::size_t f = 0; f < data.n_features(); ++f) {
            std::sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
                const double va = data.at(a, f);
                const double vb = data.at(b, f);
                if (va != vb) {
                    return va < vb;
                }
                return a < b;
            });
            std::vector<double> left(data.classes.size(), 0.0);
            double left_weight = 0.0;
            for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
                const auto row = rows[i];
                const auto cls = static_cast<std::size_t>(data.labels[row]);
                left[cls] += weights[row];
                left_weight += weights[row];
                const double v = data.at(row, f);
                const double v_next = data.at(rows[i + 1], f);
                if (v == v_next) {
                    continue; // only split between distinct values
                }
                if (i + 1 < static_cast<std::size_t>(min_leaf) ||
                    rows.size() - i - 1 < static_cast<std::size_t>(min_leaf)) {
                    continue;
                }
                std::vector<double> right(left.size());
                for (std::size_t c = 0; c < left.size(); ++c) {
                    right[c] = counts[c] - left[c];
                }
                const double right_weight = total_weight - left_weight;
                if (!(left_weight > 0.0) || !(right_weight > 0.0)) {
                    continue;
                }
                const double score = (left_weight * gini_impurity(left) +
                                      right_weight * gini_impurity(right)) /
                                     total_weight;
                // Strictly-better keeps the first (lowest feature, lowest
                // threshold) candidate on exact ties.
                if (score < best_score) {
                    best_score = score;
                    best_feature = static_cast<int>(f);
                    best_threshold = v + (v_next - v) / 2.0;
                }
            }
        }
        if (best_feature < 0) {
            return make_leaf(counts);
        }

        std::vector<std::size_t> left_rows, right_rows;
        for (std::size_t r : rows) {
            if (data.at(r, static_cast<std::size_t>(best_feature)) <= best_threshold) {
                left_rows.push_back(r);
            } else {
                right_rows.push_back(r);
            }
        }
        TreeNode node;
        node.feature = best_feature;
        node.threshold = best_threshold;
        node.distribution.assign(data.classes.size(), 0.0);
        const int self = static_cast<int>(nodes.size());
        nodes.push_back(std::move(node));
        const int left_child = build(std::move(left_rows), depth + 1);
        const int right_child = build(std::move(right_rows), depth + 1);
        nodes[static_cast<std::size_t>(self)].left = left_child;
        nodes[static_cast<std::size_t>(self)].right = right_child;
        return self;
    }
};

Tree fit_tree(const FeatureMatrix& data, std::span<const double> weights,
              std::vector<std::size_t> rows, int max_depth, int min_leaf) {
    TreeBuilder builder{data, weights, max_depth, min_leaf, {}};
    // Root must land at index 0: build breadth via recursion rooted first.
    builder.build(std::move(rows), 0);
    Tree tree;
    tree.nodes = std::move(builder.nodes);
    return tree;
}

std::vector<std::size_t> all_rows(const FeatureMatrix& data) {
    std::vector<std::size_t> rows(data.n_rows());
    std::iota(rows.begin(), rows.end(), 0);
    return rows;
}

int tree_label(const Tree& tree, std::span<const double> row) {
    const auto& dist = tree.leaf_for(row).distribution;
    return static_cast<int>(std::max_element(dist.begin(), dist.end()) - dist.begin());
}

void check_fit_inputs(const FeatureMatrix& data, int min_leaf) {
    if (data.n_rows() == 0) {
        throw Error("empty-features", "no rows to fit");
    }
    if (min_leaf < 1) {
        throw Error("bad-input", "min_leaf must be at least 1");
    }
}

ClassifierModel boost_impl(const FeatureMatrix& data, int rounds, int max_depth,
                           bool undersample, std::uint64_t seed) {
    check_fit_inputs(data, 1);
    if (rounds < 1) {
        throw Error("bad-input", "boosting requires rounds >= 1");
    }
    const std::size_t n = data.n_rows();
    const auto k = static_cast<double>(data.classes.size());
    if (k < 2) {
        throw Error("single-class", "boosting requires at least two classes in the data");
    }

    Rng rng(seed);
    std::vector<double> weights(n, 1.0 / static_cast<double>(n));
    ClassifierModel model;
    model.kind = undersample ? ClassifierKind::RusBoost : ClassifierKind::Boosted;
    model.classes = data.classes;
    model.feature_names = data.feature_names;
    model.max_depth = max_depth;
    model.min_leaf = 1;
    model.rounds = rounds;
    model.seed = seed;

    // Row indices per class, for the balanced undersample.
    std::vector<std::vector<std::size_t>> by_class(data.classes.size());
    for (std::size_t r = 0; r < n; ++r) {
        by_class[static_cast<std::size_t>(data.labels[r])].push_back(r);
    }
    std::size_t minority = std::numeric_limits<std::size_t>::max();
    for (const auto& members : by_class) {
        if (!members.empty()) {
            minority = std::min(minority, members.size());
        }
    }

    for (int round = 0; round < rounds; ++round) {
        std::vector<std::size_t> train_rows;
        if (undersample) {
            for (auto members : by_class) {
                // Partial Fisher-Yates: the first `minority` entries are a
                // uniform sample without replacement.
                for (std::size_t i = 0; i < minority && i < members.size(); ++i) {
                    const std::size_t j = i + rng.below(members.size() - i);
                    std::swap(members[i], members[j]);
                    train_rows.push_back(members[i]);
                }
            }
        } else {
            train_rows = all_rows(data);
        }
        Tree tree = fit_tree(data, weights, std::move(train_rows), max_depth, 1);

        double err = 0.0;
        std::vector<bool> miss(n, false);
        for (std::size_t r = 0; r < n; ++r) {
            miss[r] = tree_label(tree, data.row(r)) != data.labels[r];
            if (miss[r]) {
                err += weights[r];
            }
        }

        if (err < 1e-12) {
            tree.weight = kPerfectRoundWeight;
            model.trees.push_back(std::move(tree));
            break;
        }
        if (err >= 1.0 - 1.0 / k) {
            ++model.discarded_rounds;
            std::fill(weights.begin(), weights.end(), 1.0 / static_cast<double>(n));
            continue;
        }
        const double alpha = std::log((1.0 - err) / err) + std::log(k - 1.0);
        tree.weight = alpha;
        model.trees.push_back(std::move(tree));

        double total = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            if (miss[r]) {
                weights[r] *= std::exp(alpha);
            }
            total += weights[r];
        }
        for (auto& w : weights) {
            w /= total;
        }
    }

    if (model.trees.empty()) {
        throw Error("weak-learner-failed",
                    "every boosting round was discarded (weighted error >= 1 - 1/K)");
    }
    return model;
}

} // namespace

const TreeNode& Tree::leaf_for(std::span<const double> row) const {
    const TreeNode* node = &nodes.front();
    while (!node->is_leaf()) {
        const double v = row[static_cast<std::size_t>(node->feature)];
        node = &nodes[static_cast<std::size_t>(v <= node->threshold ? node->left : node->right)];
    }
    return *node;
}

double gini_impurity(std::span<const double> class_weights) {
    double total = 0.0;
    for (double w : class_weights) {
        total += w;
    }
    if (!(total > 0.0)) {
        return 0.0;
    }
    double sum_sq = 0.0;
    for (double w : class_weights) {
        const double p = w / total;
        sum_sq += p * p;
    }
    return 1.0 - sum_sq;
}

const char* to_string(ClassifierKind k) {
    switch (k) {
    case ClassifierKind::Cart:
        return "cart";
    case ClassifierKind::Boosted:
        return "boosted";
    case ClassifierKind::RusBoost:
        return "rusboost";
    }
    return "cart";
}

ClassifierModel fit_cart(const FeatureMatrix& data, int max_depth, int min_leaf) {
    check_fit_inputs(data, min_leaf);
    std::vector<double> weights(data.n_rows(), 1.0);
    ClassifierModel model;
    model.kind = ClassifierKind::Cart;
    model.classes = data.classes;
    model.feature_names = data.feature_names;
    model.max_depth = max_depth;
    model.min_leaf = min_leaf;
    model.rounds = 1;
    model.trees.push_back(fit_tree(data, weights, all_rows(data), max_depth, min_leaf));
    return model;
}

ClassifierModel fit_boosted(const FeatureMatrix& data, int rounds, int max_depth) {
    return boost_impl(data, rounds, max_depth, false, 0);
}

ClassifierModel fit_rusboost(const FeatureMatrix& data, int rounds, int max_depth,
                             std::uint64_t seed) {
    return boost_impl(data, rounds, max_depth, true, seed);
}

Prediction predict(const ClassifierModel& model, std::span<const double> row) {
    if (row.size() != model.feature_names.size()) {
        throw Error("bad-input", "feature row arity does not match the model");
    }
    if (model.trees.empty()) {
        throw Error("bad-model", "model has no trees");
    }
    Prediction p;
    p.scores.assign(model.classes.size(), 0.0);
    double total_weight = 0.0;
    for (const auto& tree : model.trees) {
        const auto& dist = tree.leaf_for(row).distribution;
        for (std::size_t c = 0; c < p.scores.size(); ++c) {
            p.scores[c] += tree.weight * dist[c];
        }
        total_weight += tree.weight;
    }
    if (total_weight > 0.0) {
        for (auto& s : p.scores) {
            s /= total_weight;
        }
    }
    p.label = static_cast<int>(std::max_element(p.scores.begin(), p.scores.end()) -
                               p.scores.begin());
    return p;
}

nlohmann::json ClassifierModel::to_json() const {
    nlohmann::json trees_json = nlohmann::json::array();
    for (const auto& tree : trees) {
        nlohmann::json nodes_json = nlohmann::json::array();
        for (const auto& node : tree.nodes) {
            nodes_json.push_back({{"feature", node.feature},
                                  {"threshold", node.threshold},
                                  {"left", node.left},
                                  {"right", node.right},
                                  {"distribution", node.distribution}});
        }
        trees_json.push_back({{"weight", tree.weight}, {"nodes", std::move(nodes_json)}});
    }
    return nlohmann::json{{"kind", to_string(kind)},
                          {"classes", classes},
                          {"feature_names", feature_names},
                          {"max_depth", max_depth},
                          {"min_leaf", min_leaf},
                          {"rounds", rounds},
                          {"discarded_rounds", discarded_rounds},
                          {"seed", seed},
                          {"trees", std::move(trees_json)}};
}

ClassifierModel ClassifierModel::from_json(const nlohmann::json& j) {
    ClassifierModel m;
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "boosted") {
        m.kind = ClassifierKind::Boosted;
    } else if (kind == "rusboost") {
        m.kind = ClassifierKind::RusBoost;
    } else if (kind == "cart") {
        m.kind = ClassifierKind::Cart;
    } else {
        throw Error("bad-model", "unknown classifier kind: '" + kind + "'");
    }
    m.classes = j.at("classes").get<std::vector<std::string>>();
    m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    m.max_depth = j.at("max_depth").get<int>();
    m.min_leaf = j.at("min_leaf").get<int>();
    m.rounds = j.at("rounds").get<int>();
    m.discarded_rounds = j.at("discarded_rounds").get<int>();
    m.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& tree_json : j.at("trees")) {
        Tree tree;
        tree.weight = tree_json.at("weight").get<double>();
        for (const auto& node_json : tree_json.at("nodes")) {
            TreeNode node;
            node.feature = node_json.at("feature").get<int>();
            node.threshold = node_json.at("threshold").get<double>();
            node.left = node_json.at("left").get<int>();
            node.right = node_json.at("right").get<int>();
            node.distribution = node_json.at("distribution").get<std::vector<double>>();
            tree.nodes.push_back(std::move(node));
        }
        m.trees.push_back(std::move(tree));
    }
    return m;
}

} // namespace chainpulse::classify
