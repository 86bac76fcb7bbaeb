#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "specgeo/dataset.hpp"

namespace specgeo {

/// Inverse-frequency class weights: total / (n_classes * count_c) for every
/// class present in the dataset's label_set. Empty classes are an error.
std::map<std::string, double> class_weights(const Dataset& train);

struct TrainTestSplit {
    std::vector<int> train_rows;
    std::vector<int> test_rows;
};

/// Patient-level split: every recording of a patient lands on one side.
/// Patients are stratified by their majority label; per class,
/// round(test_fraction * n_patients) of them (at least 1, at most all but
/// one) go to the test side. Deterministic in the seed.
TrainTestSplit split_train_test(const Dataset& dataset, double test_fraction, std::uint64_t seed);

/// Patient-stratified cross-validation folds (row indices per fold). Every
/// class needs at least `folds` patients.
std::vector<std::vector<int>> patient_cv_folds(const Dataset& dataset, int folds,
                                               std::uint64_t seed);

}  // namespace specgeo
