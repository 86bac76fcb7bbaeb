#pragma once

#include <string>
#include <vector>

namespace specgeo {

/// Named, ordered scalar features. The order is a frozen public contract:
/// downstream CSV columns and model inputs rely on it.
struct FeatureVector {
    std::vector<std::string> names;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }

    void push_back(std::string name, double value) {
        names.push_back(std::move(name));
        values.push_back(value);
    }

    /// Appends another vector's features after this one's.
    void append(const FeatureVector& other);

    /// Index of a named feature, or -1.
    int index_of(const std::string& name) const;

    /// Value lookup by name; throws on unknown name.
    double at(const std::string& name) const;

    /// Checks name uniqueness, name/value size match and finiteness.
    void validate() const;
};

}  // namespace specgeo
