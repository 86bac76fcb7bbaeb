#include "specgeo/models.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

#include "specgeo/error.hpp"
#include "specgeo/tree.hpp"

namespace specgeo {

using json = nlohmann::ordered_json;

namespace {

constexpr double kTiny = 1e-12;

struct TrainingView {
    std::vector<std::vector<double>> X;
    std::vector<int> y;
    std::vector<double> row_weights;  // class weight of each row's label
    int n_classes = 0;
};

TrainingView make_view(const Dataset& data, const std::map<std::string, double>& class_weights) {
    data.validate();
    TrainingView view;
    view.n_classes = static_cast<int>(data.label_set.size());
    if (view.n_classes < 2) raise(ErrorCode::training, "need at least 2 classes");
    view.X.reserve(data.rows.size());
    view.y.reserve(data.rows.size());
    view.row_weights.reserve(data.rows.size());
    for (const auto& row : data.rows) {
        view.X.push_back(row.features);
        view.y.push_back(data.label_index(row.label));
        auto it = class_weights.find(row.label);
        view.row_weights.push_back(it != class_weights.end() ? it->second : 1.0);
    }
    return view;
}

std::vector<double> normalized(std::vector<double> v) {
    double total = std::accumulate(v.begin(), v.end(), 0.0);
    if (total > 0) {
        for (double& x : v) x /= total;
    } else if (!v.empty()) {
        std::fill(v.begin(), v.end(), 1.0 / static_cast<double>(v.size()));
    }
    return v;
}

// ---------------------------------------------------------------------------
// Logistic regression: weighted multinomial, full-batch gradient descent on
// internally standardized features, monotone via step halving.
// ---------------------------------------------------------------------------

class LogRegModel final : public Model {
public:
    ModelKind kind() const override { return ModelKind::logistic_regression; }

    std::vector<double> predict_proba(const std::vector<double>& features) const override {
        if (features.size() != mean_.size()) raise(ErrorCode::schema, "feature length mismatch");
        const int k = static_cast<int>(classes_.size());
        const int d = static_cast<int>(mean_.size());
        std::vector<double> logits(static_cast<std::size_t>(k));
        for (int c = 0; c < k; ++c) {
            double acc = bias_[static_cast<std::size_t>(c)];
            for (int f = 0; f < d; ++f) {
                const double z = (features[static_cast<std::size_t>(f)] -
                                  mean_[static_cast<std::size_t>(f)]) /
                                 scale_[static_cast<std::size_t>(f)];
                acc += weight_[static_cast<std::size_t>(c) * static_cast<std::size_t>(d) +
                               static_cast<std::size_t>(f)] *
                       z;
            }
            logits[static_cast<std::size_t>(c)] = acc;
        }
        return softmax(logits);
    }

    static std::vector<double> softmax(const std::vector<double>& logits) {
        const double hi = *std::max_element(logits.begin(), logits.end());
        std::vector<double> out(logits.size());
        double total = 0.0;
        for (std::size_t i = 0; i < logits.size(); ++i) {
            out[i] = std::exp(logits[i] - hi);
            total += out[i];
        }
        for (double& v : out) v /= total;
        return out;
    }

    void fit(const TrainingView& view, const LogRegParams& params) {
        const int n = static_cast<int>(view.X.size());
        const int d = n > 0 ? static_cast<int>(view.X.front().size()) : 0;
        const int k = view.n_classes;

        mean_.assign(static_cast<std::size_t>(d), 0.0);
        scale_.assign(static_cast<std::size_t>(d), 1.0);
        for (int f = 0; f < d; ++f) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += view.X[static_cast<std::size_t>(i)][static_cast<std::size_t>(f)];
            mean_[static_cast<std::size_t>(f)] = s / n;
            double var = 0.0;
            for (int i = 0; i < n; ++i) {
                const double dlt = view.X[static_cast<std::size_t>(i)][static_cast<std::size_t>(f)] -
                                   mean_[static_cast<std::size_t>(f)];
                var += dlt * dlt;
            }
            const double sd = std::sqrt(var / n);
            scale_[static_cast<std::size_t>(f)] = sd > kTiny ? sd : 1.0;
        }

        std::vector<double> Z(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
        for (int i = 0; i < n; ++i) {
            for (int f = 0; f < d; ++f) {
                Z[static_cast<std::size_t>(i) * static_cast<std::size_t>(d) +
                  static_cast<std::size_t>(f)] =
                    (view.X[static_cast<std::size_t>(i)][static_cast<std::size_t>(f)] -
                     mean_[static_cast<std::size_t>(f)]) /
                    scale_[static_cast<std::size_t>(f)];
            }
        }

        const double weight_total =
            std::accumulate(view.row_weights.begin(), view.row_weights.end(), 0.0);
        const double lambda = 1.0 / (params.c * std::max(1.0, static_cast<double>(n)));

        weight_.assign(static_cast<std::size_t>(k) * static_cast<std::size_t>(d), 0.0);
        bias_.assign(static_cast<std::size_t>(k), 0.0);

        std::vector<double> grad_w(weight_.size());
        std::vector<double> grad_b(bias_.size());
        std::vector<double> logits(static_cast<std::size_t>(k));

        auto loss_and_grad = [&](const std::vector<double>& w, const std::vector<double>& b,
                                 std::vector<double>* gw, std::vector<double>* gb) {
            if (gw) {
                std::fill(gw->begin(), gw->end(), 0.0);
                std::fill(gb->begin(), gb->end(), 0.0);
            }
            double loss = 0.0;
            for (int i = 0; i < n; ++i) {
                const double* z = &Z[static_cast<std::size_t>(i) * static_cast<std::size_t>(d)];
                for (int c = 0; c < k; ++c) {
                    double acc = b[static_cast<std::size_t>(c)];
                    for (int f = 0; f < d; ++f) {
                        acc += w[static_cast<std::size_t>(c) * static_cast<std::size_t>(d) +
                                 static_cast<std::size_t>(f)] *
                               z[f];
                    }
                    logits[static_cast<std::size_t>(c)] = acc;
                }
                const auto proba = softmax(logits);
                const double wi = view.row_weights[static_cast<std::size_t>(i)] / weight_total;
                loss -= wi * std::log(std::max(proba[static_cast<std::size_t>(
                                                   view.y[static_cast<std::size_t>(i)])],
                                               1e-300));
                if (gw) {
                    for (int c = 0; c < k; ++c) {
                        const double delta =
                            wi * (proba[static_cast<std::size_t>(c)] -
                                  (view.y[static_cast<std::size_t>(i)] == c ? 1.0 : 0.0));
                        (*gb)[static_cast<std::size_t>(c)] += delta;
                        for (int f = 0; f < d; ++f) {
                            (*gw)[static_cast<std::size_t>(c) * static_cast<std::size_t>(d) +
                                  static_cast<std::size_t>(f)] += delta * z[f];
                        }
                    }
                }
            }
            for (std::size_t j = 0; j < w.size(); ++j) {
                loss += 0.5 * lambda * w[j] * w[j];
                if (gw) (*gw)[j] += lambda * w[j];
            }
            return loss;
        };

        double loss = loss_and_grad(weight_, bias_, &grad_w, &grad_b);
        double lr = 1.0;
        std::vector<double> cand_w(weight_.size()), cand_b(bias_.size());
        for (int epoch = 0; epoch < params.max_epochs; ++epoch) {
            bool stepped = false;
            for (int attempt = 0; attempt < 60; ++attempt) {
                for (std::size_t j = 0; j < weight_.size(); ++j) {
                    cand_w[j] = weight_[j] - lr * grad_w[j];
                }
                for (std::size_t j = 0; j < bias_.size(); ++j) {
                    cand_b[j] = bias_[j] - lr * grad_b[j];
                }
                const double cand_loss = loss_and_grad(cand_w, cand_b, nullptr, nullptr);
                if (cand_loss <= loss) {
                    weight_.swap(cand_w);
                    bias_.swap(cand_b);
                    const double improvement = loss - cand_loss;
                    loss = cand_loss;
                    stepped = true;
                    lr = std::min(lr * 1.05, 10.0);
                    if (improvement < params.plateau_tol * std::max(1.0, std::abs(loss))) {
                        loss_and_grad(weight_, bias_, &grad_w, &grad_b);
                        return;
                    }
                    break;
                }
                lr *= 0.5;
            }
            if (!stepped) return;  // no descent direction at double precision
            loss_and_grad(weight_, bias_, &grad_w, &grad_b);
        }
    }

    std::vector<double> mean_, scale_;   // feature standardization
    std::vector<double> weight_, bias_;  // k x d, k
};

// ---------------------------------------------------------------------------
// k-nearest neighbors on raw features with Minkowski distance.
// ---------------------------------------------------------------------------

class KnnModel final : public Model {
public:
    ModelKind kind() const override { return ModelKind::knn; }

    std::vector<double> predict_proba(const std::vector<double>& features) const override {
        if (!train_x_.empty() && features.size() != train_x_.front().size()) {
            raise(ErrorCode::schema, "feature length mismatch");
        }
        const KnnParams& params = std::get<KnnParams>(hyperparameters_);
        const int n = static_cast<int>(train_x_.size());
        const int k = std::min(params.k, n);

        std::vector<std::pair<double, int>> dist(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            dist[static_cast<std::size_t>(i)] = {distance(features, train_x_[static_cast<std::size_t>(i)], params.p), i};
        }
        std::partial_sort(dist.begin(), dist.begin() + k, dist.end());

        std::vector<double> votes(classes_.size(), 0.0);
        bool exact_hit = false;
        for (int i = 0; i < k; ++i) {
            if (dist[static_cast<std::size_t>(i)].first == 0.0) exact_hit = true;
        }
        for (int i = 0; i < k; ++i) {
            const auto& [d, idx] = dist[static_cast<std::size_t>(i)];
            const int label = train_y_[static_cast<std::size_t>(idx)];
            if (params.distance_weight) {
                if (exact_hit) {
                    if (d == 0.0) votes[static_cast<std::size_t>(label)] += 1.0;
                } else {
                    votes[static_cast<std::size_t>(label)] += 1.0 / d;
                }
            } else {
                votes[static_cast<std::size_t>(label)] += 1.0;
            }
        }
        return normalized(std::move(votes));
    }

    static double distance(const std::vector<double>& a, const std::vector<double>& b, int p) {
        double acc = 0.0;
        for (std::size_t f = 0; f < a.size(); ++f) {
            const double d = std::abs(a[f] - b[f]);
            acc += p == 1 ? d : d * d;
        }
        return p == 1 ? acc : std::sqrt(acc);
    }

    std::vector<std::vector<double>> train_x_;
    std::vector<int> train_y_;
};

// ---------------------------------------------------------------------------
// Random forest of CART trees.
// ---------------------------------------------------------------------------

class RandomForestModel final : public Model {
public:
    ModelKind kind() const override { return ModelKind::random_forest; }

    std::vector<double> predict_proba(const std::vector<double>& features) const override {
        std::vector<double> acc(classes_.size(), 0.0);
        for (const auto& tree : trees_) {
            const auto dist = tree.predict_proba(features);
            for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += dist[c];
        }
        return normalized(std::move(acc));
    }

    void fit(const TrainingView& view, const RandomForestParams& params, std::uint64_t seed) {
        const int n = static_cast<int>(view.X.size());
        const int d = static_cast<int>(view.X.front().size());
        TreeParams tree_params;
        tree_params.max_depth = params.max_depth;
        tree_params.min_samples_split = params.min_samples_split;
        tree_params.min_samples_leaf = params.min_samples_leaf;
        tree_params.max_features =
            params.sqrt_features ? std::max(1, static_cast<int>(std::sqrt(d))) : 0;

        std::mt19937_64 master(seed);
        importance_.assign(static_cast<std::size_t>(d), 0.0);
        int used_trees = 0;
        trees_.resize(static_cast<std::size_t>(params.n_estimators));
        for (int t = 0; t < params.n_estimators; ++t) {
            std::mt19937_64 tree_rng(master());
            std::vector<int> indices(static_cast<std::size_t>(n));
            if (params.bootstrap) {
                std::uniform_int_distribution<int> pick(0, n - 1);
                for (int i = 0; i < n; ++i) indices[static_cast<std::size_t>(i)] = pick(tree_rng);
            } else {
                std::iota(indices.begin(), indices.end(), 0);
            }
            auto& tree = trees_[static_cast<std::size_t>(t)];
            tree.fit(view.X, view.y, view.row_weights, indices, view.n_classes, tree_params,
                     tree_rng);
            const auto per_tree = normalized(tree.impurity_decrease());
            const double per_tree_total =
                std::accumulate(tree.impurity_decrease().begin(), tree.impurity_decrease().end(), 0.0);
            if (per_tree_total > 0) {
                for (std::size_t f = 0; f < per_tree.size(); ++f) importance_[f] += per_tree[f];
                ++used_trees;
            }
        }
        if (used_trees > 0) {
            for (double& v : importance_) v /= used_trees;
        }
        importance_ = normalized(std::move(importance_));
        if (used_trees == 0) std::fill(importance_.begin(), importance_.end(), 0.0);
    }

    std::vector<DecisionTree> trees_;
    std::vector<double> importance_;
};

// ---------------------------------------------------------------------------
// AdaBoost (SAMME) over shallow CART trees.
// ---------------------------------------------------------------------------

class AdaBoostModel final : public Model {
public:
    ModelKind kind() const override { return ModelKind::adaboost; }

    std::vector<double> predict_proba(const std::vector<double>& features) const override {
        std::vector<double> votes(classes_.size(), 0.0);
        for (std::size_t m = 0; m < trees_.size(); ++m) {
            votes[static_cast<std::size_t>(trees_[m].predict(features))] += alphas_[m];
        }
        return normalized(std::move(votes));
    }

    void fit(const TrainingView& view, const AdaBoostParams& params, std::uint64_t seed) {
        const int n = static_cast<int>(view.X.size());
        const int k = view.n_classes;
        TreeParams tree_params;
        tree_params.max_depth = params.base_depth;

        std::vector<double> w = normalized(view.row_weights);
        std::vector<int> indices(static_cast<std::size_t>(n));
        std::iota(indices.begin(), indices.end(), 0);
        std::mt19937_64 rng(seed);

        for (int m = 0; m < params.n_estimators; ++m) {
            DecisionTree tree;
            tree.fit(view.X, view.y, w, indices, k, tree_params, rng);
            double err = 0.0;
            std::vector<char> wrong(static_cast<std::size_t>(n), 0);
            for (int i = 0; i < n; ++i) {
                if (tree.predict(view.X[static_cast<std::size_t>(i)]) !=
                    view.y[static_cast<std::size_t>(i)]) {
                    wrong[static_cast<std::size_t>(i)] = 1;
                    err += w[static_cast<std::size_t>(i)];
                }
            }
            if (err <= 0.0) {  // perfect learner dominates the vote
                trees_.push_back(std::move(tree));
                alphas_.push_back(params.learning_rate * (std::log(1.0 / kTiny) + std::log(k - 1.0)));
                break;
            }
            if (err >= 1.0 - 1.0 / k) break;  // no better than chance; stop
            const double alpha =
                params.learning_rate * (std::log((1.0 - err) / err) + std::log(k - 1.0));
            trees_.push_back(std::move(tree));
            alphas_.push_back(alpha);
            for (int i = 0; i < n; ++i) {
                if (wrong[static_cast<std::size_t>(i)]) {
                    w[static_cast<std::size_t>(i)] *= std::exp(alpha);
                }
            }
            w = normalized(std::move(w));
        }
        if (trees_.empty()) raise(ErrorCode::training, "boosting found no usable weak learner");
    }

    std::vector<DecisionTree> trees_;
    std::vector<double> alphas_;
};

std::vector<int> truth_indices(const Model& model, const Dataset& test) {
    std::vector<int> y;
    y.reserve(test.rows.size());
    for (const auto& row : test.rows) {
        const auto it = std::find(model.classes().begin(), model.classes().end(), row.label);
        if (it == model.classes().end()) {
            raise(ErrorCode::label, "label '" + row.label + "' unseen at training time");
        }
        y.push_back(static_cast<int>(it - model.classes().begin()));
    }
    return y;
}

std::vector<std::vector<double>> all_probas(const Model& model, const Dataset& test) {
    std::vector<std::vector<double>> proba;
    proba.reserve(test.rows.size());
    for (const auto& row : test.rows) proba.push_back(model.predict_proba(row.features));
    return proba;
}

}  // namespace

const char* kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::logistic_regression: return "lr";
        case ModelKind::knn: return "knn";
        case ModelKind::random_forest: return "rf";
        case ModelKind::adaboost: return "adaboost";
    }
    return "?";
}

ModelKind parse_kind(const std::string& name) {
    for (ModelKind kind : {ModelKind::logistic_regression, ModelKind::knn,
                           ModelKind::random_forest, ModelKind::adaboost}) {
        if (name == kind_name(kind)) return kind;
    }
    raise(ErrorCode::parameter, "unknown model kind '" + name + "'");
}

ModelKind params_kind(const ModelParams& params) {
    if (std::holds_alternative<LogRegParams>(params)) return ModelKind::logistic_regression;
    if (std::holds_alternative<KnnParams>(params)) return ModelKind::knn;
    if (std::holds_alternative<RandomForestParams>(params)) return ModelKind::random_forest;
    return ModelKind::adaboost;
}

std::string describe_params(const ModelParams& params) {
    std::ostringstream out;
    if (const auto* p = std::get_if<LogRegParams>(&params)) {
        out << "c=" << p->c;
    } else if (const auto* p = std::get_if<KnnParams>(&params)) {
        out << "k=" << p->k << " weights=" << (p->distance_weight ? "distance" : "uniform")
            << " p=" << p->p;
    } else if (const auto* p = std::get_if<RandomForestParams>(&params)) {
        out << "n_estimators=" << p->n_estimators << " max_depth=" << p->max_depth
            << " min_split=" << p->min_samples_split << " bootstrap=" << (p->bootstrap ? 1 : 0);
    } else if (const auto* p = std::get_if<AdaBoostParams>(&params)) {
        out << "n_estimators=" << p->n_estimators << " learning_rate=" << p->learning_rate
            << " base_depth=" << p->base_depth;
    }
    return out.str();
}

int Model::predict(const std::vector<double>& features) const {
    const auto proba = predict_proba(features);
    int best = 0;
    for (int c = 1; c < static_cast<int>(proba.size()); ++c) {
        if (proba[static_cast<std::size_t>(c)] > proba[static_cast<std::size_t>(best)]) best = c;
    }
    return best;
}

std::unique_ptr<Model> train(ModelKind kind, const Dataset& train_data, const ModelParams& params,
                             const std::map<std::string, double>& class_weights,
                             std::uint64_t seed) {
    if (params_kind(params) != kind) {
        raise(ErrorCode::parameter, "hyperparameters do not match model kind");
    }
    const TrainingView view = make_view(train_data, class_weights);

    std::unique_ptr<Model> model;
    switch (kind) {
        case ModelKind::logistic_regression: {
            auto m = std::make_unique<LogRegModel>();
            m->fit(view, std::get<LogRegParams>(params));
            model = std::move(m);
            break;
        }
        case ModelKind::knn: {
            const auto& p = std::get<KnnParams>(params);
            if (p.k < 1 || (p.p != 1 && p.p != 2)) {
                raise(ErrorCode::parameter, "invalid k-NN hyperparameters");
            }
            auto m = std::make_unique<KnnModel>();
            m->train_x_ = view.X;
            m->train_y_ = view.y;
            model = std::move(m);
            break;
        }
        case ModelKind::random_forest: {
            const auto& p = std::get<RandomForestParams>(params);
            if (p.n_estimators < 1) raise(ErrorCode::parameter, "n_estimators must be >= 1");
            auto m = std::make_unique<RandomForestModel>();
            m->classes_ = train_data.label_set;  // fit() needs nothing else up front
            m->fit(view, p, seed);
            model = std::move(m);
            break;
        }
        case ModelKind::adaboost: {
            const auto& p = std::get<AdaBoostParams>(params);
            if (p.n_estimators < 1 || p.base_depth < 1 || p.base_depth > 3) {
                raise(ErrorCode::parameter, "invalid AdaBoost hyperparameters");
            }
            auto m = std::make_unique<AdaBoostModel>();
            m->fit(view, p, seed);
            model = std::move(m);
            break;
        }
    }
    model->classes_ = train_data.label_set;
    model->feature_names_ = train_data.feature_names;
    model->hyperparameters_ = params;
    model->class_weights_ = class_weights;
    return model;
}

std::vector<double> feature_importance(const Model& model) {
    const auto* rf = dynamic_cast<const RandomForestModel*>(&model);
    if (rf == nullptr) {
        raise(ErrorCode::kind, "feature importance requires a random forest model");
    }
    return rf->importance_;
}

std::vector<int> importance_ranking(const std::vector<double>& importance) {
    std::vector<int> order(importance.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return importance[static_cast<std::size_t>(a)] > importance[static_cast<std::size_t>(b)];
    });
    return order;
}

MetricsReport evaluate(const Model& model, const Dataset& test) {
    if (test.rows.empty()) raise(ErrorCode::input_size, "empty test set");
    if (static_cast<int>(model.feature_names().size()) != test.n_features()) {
        raise(ErrorCode::schema, "test feature count does not match the model");
    }
    return compute_multiclass_metrics(model.classes(), truth_indices(model, test),
                                      all_probas(model, test));
}

MetricsReport evaluate_binary(const Model& model, const Dataset& test,
                              const std::string& positive_label) {
    if (model.classes().size() != 2) {
        raise(ErrorCode::kind, "binary evaluation requires a 2-class model");
    }
    if (static_cast<int>(model.feature_names().size()) != test.n_features()) {
        raise(ErrorCode::schema, "test feature count does not match the model");
    }
    int positive_index = -1;
    for (std::size_t i = 0; i < model.classes().size(); ++i) {
        if (model.classes()[i] == positive_label) positive_index = static_cast<int>(i);
    }
    if (positive_index < 0) raise(ErrorCode::label, "positive label not among model classes");
    return compute_binary_metrics(model.classes(), positive_index, truth_indices(model, test),
                                  all_probas(model, test));
}

// ---------------------------------------------------------------------------
// JSON persistence
// ---------------------------------------------------------------------------

namespace {

json params_to_json(const ModelParams& params) {
    json j;
    if (const auto* p = std::get_if<LogRegParams>(&params)) {
        j["c"] = p->c;
        j["max_epochs"] = p->max_epochs;
        j["plateau_tol"] = p->plateau_tol;
    } else if (const auto* p = std::get_if<KnnParams>(&params)) {
        j["k"] = p->k;
        j["distance_weight"] = p->distance_weight;
        j["p"] = p->p;
    } else if (const auto* p = std::get_if<RandomForestParams>(&params)) {
        j["n_estimators"] = p->n_estimators;
        j["max_depth"] = p->max_depth;
        j["min_samples_split"] = p->min_samples_split;
        j["min_samples_leaf"] = p->min_samples_leaf;
        j["bootstrap"] = p->bootstrap;
        j["sqrt_features"] = p->sqrt_features;
    } else if (const auto* p = std::get_if<AdaBoostParams>(&params)) {
        j["n_estimators"] = p->n_estimators;
        j["learning_rate"] = p->learning_rate;
        j["base_depth"] = p->base_depth;
    }
    return j;
}

ModelParams params_from_json(ModelKind kind, const json& j) {
    switch (kind) {
        case ModelKind::logistic_regression: {
            LogRegParams p;
            p.c = j.at("c");
            p.max_epochs = j.at("max_epochs");
            p.plateau_tol = j.at("plateau_tol");
            return p;
        }
        case ModelKind::knn: {
            KnnParams p;
            p.k = j.at("k");
            p.distance_weight = j.at("distance_weight");
            p.p = j.at("p");
            return p;
        }
        case ModelKind::random_forest: {
            RandomForestParams p;
            p.n_estimators = j.at("n_estimators");
            p.max_depth = j.at("max_depth");
            p.min_samples_split = j.at("min_samples_split");
            p.min_samples_leaf = j.at("min_samples_leaf");
            p.bootstrap = j.at("bootstrap");
            p.sqrt_features = j.at("sqrt_features");
            return p;
        }
        case ModelKind::adaboost: {
            AdaBoostParams p;
            p.n_estimators = j.at("n_estimators");
            p.learning_rate = j.at("learning_rate");
            p.base_depth = j.at("base_depth");
            return p;
        }
    }
    raise(ErrorCode::schema, "invalid model kind in JSON");
}

json tree_to_json(const DecisionTree& tree) {
    json nodes = json::array();
    for (const auto& node : tree.nodes()) {
        json n;
        n["feature"] = node.feature;
        if (node.feature >= 0) {
            n["threshold"] = node.threshold;
            n["left"] = node.left;
            n["right"] = node.right;
        } else {
            n["dist"] = node.dist;
        }
        nodes.push_back(std::move(n));
    }
    return nodes;
}

DecisionTree tree_from_json(const json& j, int n_classes) {
    std::vector<DecisionTree::Node> nodes;
    for (const auto& n : j) {
        DecisionTree::Node node;
        node.feature = n.at("feature");
        if (node.feature >= 0) {
            node.threshold = n.at("threshold");
            node.left = n.at("left");
            node.right = n.at("right");
        } else {
            node.dist = n.at("dist").get<std::vector<double>>();
        }
        nodes.push_back(std::move(node));
    }
    DecisionTree tree;
    tree.set_nodes(std::move(nodes), n_classes);
    return tree;
}

}  // namespace

std::string model_to_json(const Model& model) {
    json j;
    j["kind"] = kind_name(model.kind());
    j["classes"] = model.classes();
    j["feature_names"] = model.feature_names();
    j["hyperparameters"] = params_to_json(model.hyperparameters());
    j["class_weights"] = model.class_weight_map();

    if (const auto* lr = dynamic_cast<const LogRegModel*>(&model)) {
        j["mean"] = lr->mean_;
        j["scale"] = lr->scale_;
        j["weight"] = lr->weight_;
        j["bias"] = lr->bias_;
    } else if (const auto* knn = dynamic_cast<const KnnModel*>(&model)) {
        j["train_x"] = knn->train_x_;
        j["train_y"] = knn->train_y_;
    } else if (const auto* rf = dynamic_cast<const RandomForestModel*>(&model)) {
        json trees = json::array();
        for (const auto& tree : rf->trees_) trees.push_back(tree_to_json(tree));
        j["trees"] = std::move(trees);
        j["importance"] = rf->importance_;
    } else if (const auto* ab = dynamic_cast<const AdaBoostModel*>(&model)) {
        json trees = json::array();
        for (const auto& tree : ab->trees_) trees.push_back(tree_to_json(tree));
        j["trees"] = std::move(trees);
        j["alphas"] = ab->alphas_;
    }
    return j.dump(2);
}

std::unique_ptr<Model> model_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        raise(ErrorCode::schema, std::string("model JSON parse failure: ") + e.what());
    }
    try {
        const ModelKind kind = parse_kind(j.at("kind").get<std::string>());
        const auto classes = j.at("classes").get<std::vector<std::string>>();
        const int k = static_cast<int>(classes.size());
        std::unique_ptr<Model> model;
        switch (kind) {
            case ModelKind::logistic_regression: {
                auto m = std::make_unique<LogRegModel>();
                m->mean_ = j.at("mean").get<std::vector<double>>();
                m->scale_ = j.at("scale").get<std::vector<double>>();
                m->weight_ = j.at("weight").get<std::vector<double>>();
                m->bias_ = j.at("bias").get<std::vector<double>>();
                model = std::move(m);
                break;
            }
            case ModelKind::knn: {
                auto m = std::make_unique<KnnModel>();
                m->train_x_ = j.at("train_x").get<std::vector<std::vector<double>>>();
                m->train_y_ = j.at("train_y").get<std::vector<int>>();
                model = std::move(m);
                break;
            }
            case ModelKind::random_forest: {
                auto m = std::make_unique<RandomForestModel>();
                for (const auto& t : j.at("trees")) m->trees_.push_back(tree_from_json(t, k));
                m->importance_ = j.at("importance").get<std::vector<double>>();
                model = std::move(m);
                break;
            }
            case ModelKind::adaboost: {
                auto m = std::make_unique<AdaBoostModel>();
                for (const auto& t : j.at("trees")) m->trees_.push_back(tree_from_json(t, k));
                m->alphas_ = j.at("alphas").get<std::vector<double>>();
                model = std::move(m);
                break;
            }
        }
        model->classes_ = classes;
        model->feature_names_ = j.at("feature_names").get<std::vector<std::string>>();
        model->hyperparameters_ = params_from_json(kind, j.at("hyperparameters"));
        model->class_weights_ = j.at("class_weights").get<std::map<std::string, double>>();
        return model;
    } catch (const json::exception& e) {
        raise(ErrorCode::schema, std::string("model JSON missing fields: ") + e.what());
    }
}

void save_model(const Model& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(ErrorCode::io, "cannot write model file '" + path + "'");
    out << model_to_json(model) << "\n";
    if (!out) raise(ErrorCode::io, "short write to '" + path + "'");
}

std::unique_ptr<Model> load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorCode::io, "cannot read model file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return model_from_json(buffer.str());
}

}  // namespace specgeo
