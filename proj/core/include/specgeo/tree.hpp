#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace specgeo {

struct TreeParams {
    int max_depth = 0;          // 0 means unlimited
    int min_samples_split = 2;  // node sample count below which no split
    int min_samples_leaf = 1;
    int max_features = 0;       // candidate features per split; 0 means all
};

/// CART classification tree on weighted samples with Gini impurity. Split
/// thresholds are midpoints between consecutive distinct values; ties in
/// impurity decrease keep the first candidate (feature order, then value
/// order), so fitting is deterministic for a given RNG state.
class DecisionTree {
public:
    struct Node {
        int feature = -1;  // -1 marks a leaf
        double threshold = 0.0;
        int left = -1;
        int right = -1;
        std::vector<double> dist;  // leaf class distribution, sums to 1
    };

    /// Fits on rows X[indices[i]] with labels y in [0, n_classes) and
    /// per-sample weights. Indices may repeat (bootstrap).
    void fit(const std::vector<std::vector<double>>& X, const std::vector<int>& y,
             const std::vector<double>& weights, const std::vector<int>& indices, int n_classes,
             const TreeParams& params, std::mt19937_64& rng);

    std::vector<double> predict_proba(const std::vector<double>& x) const;
    int predict(const std::vector<double>& x) const;

    /// Total weighted impurity decrease attributed to each feature.
    const std::vector<double>& impurity_decrease() const { return impurity_decrease_; }

    const std::vector<Node>& nodes() const { return nodes_; }
    void set_nodes(std::vector<Node> nodes, int n_classes);
    int n_classes() const { return n_classes_; }

private:
    int build(const std::vector<std::vector<double>>& X, const std::vector<int>& y,
              const std::vector<double>& weights, std::vector<int>& indices, int begin, int end,
              int depth, const TreeParams& params, std::mt19937_64& rng);

    std::vector<Node> nodes_;
    std::vector<double> impurity_decrease_;
    int n_classes_ = 0;
};

}  // namespace specgeo
