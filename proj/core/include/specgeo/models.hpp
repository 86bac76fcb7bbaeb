#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "specgeo/dataset.hpp"
#include "specgeo/metrics.hpp"

namespace specgeo {

enum class ModelKind { logistic_regression, knn, random_forest, adaboost };

const char* kind_name(ModelKind kind);
ModelKind parse_kind(const std::string& name);

struct LogRegParams {
    double c = 1.0;  // inverse regularization strength (L2)
    int max_epochs = 2000;
    double plateau_tol = 1e-8;
};

struct KnnParams {
    int k = 5;
    bool distance_weight = false;  // uniform otherwise
    int p = 2;                     // Minkowski power: 1 or 2
};

struct RandomForestParams {
    int n_estimators = 100;
    int max_depth = 0;  // 0 means unlimited
    int min_samples_split = 2;
    int min_samples_leaf = 1;
    bool bootstrap = true;
    bool sqrt_features = true;  // per-split candidates: sqrt(D) vs all
};

struct AdaBoostParams {
    int n_estimators = 50;
    double learning_rate = 1.0;
    int base_depth = 1;  // shallow trees, 1..3
};

using ModelParams = std::variant<LogRegParams, KnnParams, RandomForestParams, AdaBoostParams>;

ModelKind params_kind(const ModelParams& params);

/// Short "key=value ..." description of one grid point.
std::string describe_params(const ModelParams& params);

/// A fitted classifier. Immutable after training; predictions are safe to
/// run concurrently.
class Model {
public:
    virtual ~Model() = default;
    virtual ModelKind kind() const = 0;

    /// Probability vector over classes(), summing to 1.
    virtual std::vector<double> predict_proba(const std::vector<double>& features) const = 0;

    /// Class index of the highest probability (lowest index on ties).
    int predict(const std::vector<double>& features) const;

    const std::vector<std::string>& classes() const { return classes_; }
    const std::vector<std::string>& feature_names() const { return feature_names_; }
    const ModelParams& hyperparameters() const { return hyperparameters_; }
    const std::map<std::string, double>& class_weight_map() const { return class_weights_; }

protected:
    std::vector<std::string> classes_;
    std::vector<std::string> feature_names_;
    ModelParams hyperparameters_;
    std::map<std::string, double> class_weights_;
    friend std::unique_ptr<Model> train(ModelKind, const Dataset&, const ModelParams&,
                                        const std::map<std::string, double>&, std::uint64_t);
};

/// Trains a model of the given kind. Class weights apply to logistic
/// regression, random forest and AdaBoost; k-NN ignores them. Deterministic
/// for a fixed seed.
std::unique_ptr<Model> train(ModelKind kind, const Dataset& train_data,
                             const ModelParams& params,
                             const std::map<std::string, double>& class_weights,
                             std::uint64_t seed);

/// Mean-decrease-impurity importances of a random forest, normalized to sum
/// to 1. Throws a kind error for other models.
std::vector<double> feature_importance(const Model& model);

/// Feature indices sorted by descending importance, ties by index.
std::vector<int> importance_ranking(const std::vector<double>& importance);

/// Self-describing JSON persistence.
void save_model(const Model& model, const std::string& path);
std::unique_ptr<Model> load_model(const std::string& path);
std::string model_to_json(const Model& model);
std::unique_ptr<Model> model_from_json(const std::string& text);

/// Evaluates on a test set with multiclass conventions. Labels unseen at
/// training time are an error.
MetricsReport evaluate(const Model& model, const Dataset& test);

/// Binary evaluation with the paper's formulas; the model must have exactly
/// two classes, one of which is the positive label.
MetricsReport evaluate_binary(const Model& model, const Dataset& test,
                              const std::string& positive_label);

}  // namespace specgeo
