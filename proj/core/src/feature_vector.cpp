#include "specgeo/feature_vector.hpp"

#include <cmath>
#include <unordered_set>

#include "specgeo/error.hpp"

namespace specgeo {

void FeatureVector::append(const FeatureVector& other) {
    names.insert(names.end(), other.names.begin(), other.names.end());
    values.insert(values.end(), other.values.begin(), other.values.end());
}

int FeatureVector::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return static_cast<int>(i);
    }
    return -1;
}

double FeatureVector::at(const std::string& name) const {
    int idx = index_of(name);
    if (idx < 0) raise(ErrorCode::parameter, "unknown feature name '" + name + "'");
    return values[static_cast<std::size_t>(idx)];
}

void FeatureVector::validate() const {
    if (names.size() != values.size()) {
        raise(ErrorCode::data, "feature name/value count mismatch");
    }
    std::unordered_set<std::string> seen;
    for (const auto& n : names) {
        if (!seen.insert(n).second) raise(ErrorCode::data, "duplicate feature name '" + n + "'");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            raise(ErrorCode::data, "non-finite value for feature '" + names[i] + "'");
        }
    }
}

}  // namespace specgeo
