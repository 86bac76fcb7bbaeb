#include "specgeo/split.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "specgeo/error.hpp"

namespace specgeo {
namespace {

struct PatientGroup {
    std::string patient_id;
    std::string majority_label;
    std::vector<int> rows;
};

// Patients in first-appearance order; majority label ties break to the
// lexicographically smallest label so the grouping is deterministic.
std::vector<PatientGroup> group_by_patient(const Dataset& dataset) {
    std::vector<PatientGroup> groups;
    std::map<std::string, int> index;
    for (int i = 0; i < dataset.n_rows(); ++i) {
        const auto& row = dataset.rows[static_cast<std::size_t>(i)];
        auto [it, inserted] = index.emplace(row.patient_id, static_cast<int>(groups.size()));
        if (inserted) groups.push_back({row.patient_id, "", {}});
        groups[static_cast<std::size_t>(it->second)].rows.push_back(i);
    }
    for (auto& g : groups) {
        std::map<std::string, int> counts;
        for (int r : g.rows) counts[dataset.rows[static_cast<std::size_t>(r)].label]++;
        int best = -1;
        for (const auto& [label, count] : counts) {
            if (count > best) {
                best = count;
                g.majority_label = label;
            }
        }
    }
    return groups;
}

// Majority-label -> patient group indices, label-sorted for determinism.
std::map<std::string, std::vector<int>> by_label(const std::vector<PatientGroup>& groups) {
    std::map<std::string, std::vector<int>> out;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        out[groups[i].majority_label].push_back(static_cast<int>(i));
    }
    return out;
}

}  // namespace

std::map<std::string, double> class_weights(const Dataset& train) {
    std::map<std::string, int> counts;
    for (const auto& label : train.label_set) counts[label] = 0;
    for (const auto& row : train.rows) {
        auto it = counts.find(row.label);
        if (it == counts.end()) raise(ErrorCode::label, "label '" + row.label + "' not in label set");
        ++it->second;
    }
    std::map<std::string, double> weights;
    const double total = static_cast<double>(train.n_rows());
    const double k = static_cast<double>(train.label_set.size());
    for (const auto& [label, count] : counts) {
        if (count == 0) raise(ErrorCode::parameter, "class '" + label + "' has no samples");
        weights[label] = total / (k * count);
    }
    return weights;
}

TrainTestSplit split_train_test(const Dataset& dataset, double test_fraction,
                                std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        raise(ErrorCode::parameter, "test_fraction must be in (0, 1)");
    }
    const auto groups = group_by_patient(dataset);
    auto label_groups = by_label(groups);

    std::mt19937_64 rng(seed);
    TrainTestSplit split;
    for (auto& [label, patient_ids] : label_groups) {
        const int n = static_cast<int>(patient_ids.size());
        if (n < 2) {
            raise(ErrorCode::stratification,
                  "class '" + label + "' has " + std::to_string(n) +
                      " patient(s); need at least 2 to split");
        }
        std::shuffle(patient_ids.begin(), patient_ids.end(), rng);
        int n_test = static_cast<int>(std::lround(test_fraction * n));
        n_test = std::clamp(n_test, 1, n - 1);
        for (int i = 0; i < n; ++i) {
            const auto& rows = groups[static_cast<std::size_t>(patient_ids[static_cast<std::size_t>(i)])].rows;
            auto& side = (i < n_test) ? split.test_rows : split.train_rows;
            side.insert(side.end(), rows.begin(), rows.end());
        }
    }
    std::sort(split.train_rows.begin(), split.train_rows.end());
    std::sort(split.test_rows.begin(), split.test_rows.end());
    return split;
}

std::vector<std::vector<int>> patient_cv_folds(const Dataset& dataset, int folds,
                                               std::uint64_t seed) {
    if (folds < 2) raise(ErrorCode::parameter, "need at least 2 folds");
    const auto groups = group_by_patient(dataset);
    auto label_groups = by_label(groups);

    std::mt19937_64 rng(seed);
    std::vector<std::vector<int>> out(static_cast<std::size_t>(folds));
    for (auto& [label, patient_ids] : label_groups) {
        if (static_cast<int>(patient_ids.size()) < folds) {
            raise(ErrorCode::stratification, "class '" + label + "' has fewer patients than folds");
        }
        std::shuffle(patient_ids.begin(), patient_ids.end(), rng);
        for (std::size_t i = 0; i < patient_ids.size(); ++i) {
            const auto& rows = groups[static_cast<std::size_t>(patient_ids[i])].rows;
            auto& fold = out[i % static_cast<std::size_t>(folds)];
            fold.insert(fold.end(), rows.begin(), rows.end());
        }
    }
    for (auto& fold : out) std::sort(fold.begin(), fold.end());
    return out;
}

}  // namespace specgeo
