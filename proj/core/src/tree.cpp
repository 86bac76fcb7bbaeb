#include "specgeo/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "specgeo/error.hpp"

namespace specgeo {
namespace {

double gini(const std::vector<double>& class_weight_sums, double total) {
    if (!(total > 0)) return 0.0;
    double acc = 0.0;
    for (double w : class_weight_sums) {
        const double p = w / total;
        acc += p * p;
    }
    return 1.0 - acc;
}

}  // namespace

void DecisionTree::fit(const std::vector<std::vector<double>>& X, const std::vector<int>& y,
                       const std::vector<double>& weights, const std::vector<int>& indices,
                       int n_classes, const TreeParams& params, std::mt19937_64& rng) {
    if (indices.empty()) raise(ErrorCode::training, "no samples to fit");
    n_classes_ = n_classes;
    nodes_.clear();
    impurity_decrease_.assign(X.empty() ? 0 : X.front().size(), 0.0);

    std::vector<int> work = indices;
    build(X, y, weights, work, 0, static_cast<int>(work.size()), 0, params, rng);
}

int DecisionTree::build(const std::vector<std::vector<double>>& X, const std::vector<int>& y,
                        const std::vector<double>& weights, std::vector<int>& indices, int begin,
                        int end, int depth, const TreeParams& params, std::mt19937_64& rng) {
    const int n = end - begin;
    const int n_features = static_cast<int>(X.front().size());

    std::vector<double> class_sums(static_cast<std::size_t>(n_classes_), 0.0);
    double total = 0.0;
    for (int i = begin; i < end; ++i) {
        const int row = indices[static_cast<std::size_t>(i)];
        class_sums[static_cast<std::size_t>(y[static_cast<std::size_t>(row)])] +=
            weights[static_cast<std::size_t>(row)];
        total += weights[static_cast<std::size_t>(row)];
    }
    const double node_gini = gini(class_sums, total);

    auto make_leaf = [&]() {
        Node leaf;
        leaf.dist.resize(static_cast<std::size_t>(n_classes_));
        for (int c = 0; c < n_classes_; ++c) {
            leaf.dist[static_cast<std::size_t>(c)] =
                total > 0 ? class_sums[static_cast<std::size_t>(c)] / total : 0.0;
        }
        nodes_.push_back(std::move(leaf));
        return static_cast<int>(nodes_.size()) - 1;
    };

    const bool depth_ok = params.max_depth == 0 || depth < params.max_depth;
    if (!depth_ok || n < params.min_samples_split || node_gini <= 0.0) return make_leaf();

    // Candidate features: all, or a random subset drawn per node.
    std::vector<int> features(static_cast<std::size_t>(n_features));
    std::iota(features.begin(), features.end(), 0);
    int n_candidates = n_features;
    if (params.max_features > 0 && params.max_features < n_features) {
        n_candidates = params.max_features;
        for (int i = 0; i < n_candidates; ++i) {
            std::uniform_int_distribution<int> pick(i, n_features - 1);
            std::swap(features[static_cast<std::size_t>(i)],
                      features[static_cast<std::size_t>(pick(rng))]);
        }
    }

    int best_feature = -1;
    double best_threshold = 0.0, best_decrease = 0.0;

    std::vector<std::pair<double, int>> values(static_cast<std::size_t>(n));
    std::vector<double> left_sums(static_cast<std::size_t>(n_classes_));
    for (int fi = 0; fi < n_candidates; ++fi) {
        const int f = features[static_cast<std::size_t>(fi)];
        for (int i = 0; i < n; ++i) {
            const int row = indices[static_cast<std::size_t>(begin + i)];
            values[static_cast<std::size_t>(i)] = {
                X[static_cast<std::size_t>(row)][static_cast<std::size_t>(f)], row};
        }
        std::sort(values.begin(), values.end());
        if (values.front().first == values.back().first) continue;  // constant feature

        std::fill(left_sums.begin(), left_sums.end(), 0.0);
        double left_total = 0.0;
        for (int i = 0; i + 1 < n; ++i) {
            const int row = values[static_cast<std::size_t>(i)].second;
            left_sums[static_cast<std::size_t>(y[static_cast<std::size_t>(row)])] +=
                weights[static_cast<std::size_t>(row)];
            left_total += weights[static_cast<std::size_t>(row)];
            if (values[static_cast<std::size_t>(i)].first ==
                values[static_cast<std::size_t>(i + 1)].first) {
                continue;  // no boundary between equal values
            }
            const int n_left = i + 1, n_right = n - n_left;
            if (n_left < params.min_samples_leaf || n_right < params.min_samples_leaf) continue;

            double right_total = total - left_total;
            double left_gini = gini(left_sums, left_total);
            double right_acc = 0.0;
            for (int c = 0; c < n_classes_; ++c) {
                const double w = class_sums[static_cast<std::size_t>(c)] -
                                 left_sums[static_cast<std::size_t>(c)];
                if (right_total > 0) {
                    const double p = w / right_total;
                    right_acc += p * p;
                }
            }
            const double right_gini = right_total > 0 ? 1.0 - right_acc : 0.0;
            const double decrease =
                total * node_gini - left_total * left_gini - right_total * right_gini;
            if (decrease > best_decrease) {
                best_decrease = decrease;
                best_feature = f;
                best_threshold = 0.5 * (values[static_cast<std::size_t>(i)].first +
                                        values[static_cast<std::size_t>(i + 1)].first);
            }
        }
    }

    if (best_feature < 0 || !(best_decrease > 0.0)) return make_leaf();

    auto mid = std::stable_partition(
        indices.begin() + begin, indices.begin() + end, [&](int row) {
            return X[static_cast<std::size_t>(row)][static_cast<std::size_t>(best_feature)] <=
                   best_threshold;
        });
    const int split_at = static_cast<int>(mid - indices.begin());
    if (split_at == begin || split_at == end) return make_leaf();  // numeric safety

    impurity_decrease_[static_cast<std::size_t>(best_feature)] += best_decrease;

    const int node_id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    nodes_[static_cast<std::size_t>(node_id)].feature = best_feature;
    nodes_[static_cast<std::size_t>(node_id)].threshold = best_threshold;
    const int left = build(X, y, weights, indices, begin, split_at, depth + 1, params, rng);
    const int right = build(X, y, weights, indices, split_at, end, depth + 1, params, rng);
    nodes_[static_cast<std::size_t>(node_id)].left = left;
    nodes_[static_cast<std::size_t>(node_id)].right = right;
    return node_id;
}

std::vector<double> DecisionTree::predict_proba(const std::vector<double>& x) const {
    if (nodes_.empty()) raise(ErrorCode::precondition, "tree is not fitted");
    int node = 0;
    while (nodes_[static_cast<std::size_t>(node)].feature >= 0) {
        const auto& nd = nodes_[static_cast<std::size_t>(node)];
        node = x[static_cast<std::size_t>(nd.feature)] <= nd.threshold ? nd.left : nd.right;
    }
    return nodes_[static_cast<std::size_t>(node)].dist;
}

int DecisionTree::predict(const std::vector<double>& x) const {
    const auto dist = predict_proba(x);
    int best = 0;
    for (int c = 1; c < static_cast<int>(dist.size()); ++c) {
        if (dist[static_cast<std::size_t>(c)] > dist[static_cast<std::size_t>(best)]) best = c;
    }
    return best;
}

void DecisionTree::set_nodes(std::vector<Node> nodes, int n_classes) {
    nodes_ = std::move(nodes);
    n_classes_ = n_classes;
    impurity_decrease_.clear();
}

}  // namespace specgeo
