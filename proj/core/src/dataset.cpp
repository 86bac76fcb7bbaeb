#include "specgeo/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "specgeo/error.hpp"

namespace specgeo {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

}  // namespace

int Dataset::label_index(const std::string& label) const {
    for (std::size_t i = 0; i < label_set.size(); ++i) {
        if (label_set[i] == label) return static_cast<int>(i);
    }
    return -1;
}

Dataset Dataset::subset(const std::vector<int>& row_indices) const {
    Dataset out;
    out.feature_names = feature_names;
    out.label_set = label_set;
    out.rows.reserve(row_indices.size());
    for (int i : row_indices) {
        if (i < 0 || i >= n_rows()) raise(ErrorCode::parameter, "row index out of range");
        out.rows.push_back(rows[static_cast<std::size_t>(i)]);
    }
    return out;
}

Dataset Dataset::filter_labels(const std::vector<std::string>& labels) const {
    Dataset out;
    out.feature_names = feature_names;
    out.label_set = labels;
    for (const auto& row : rows) {
        if (std::find(labels.begin(), labels.end(), row.label) != labels.end()) {
            out.rows.push_back(row);
        }
    }
    return out;
}

Dataset Dataset::select_features(const std::vector<int>& feature_indices) const {
    Dataset out;
    out.label_set = label_set;
    for (int f : feature_indices) {
        if (f < 0 || f >= n_features()) raise(ErrorCode::parameter, "feature index out of range");
        out.feature_names.push_back(feature_names[static_cast<std::size_t>(f)]);
    }
    out.rows.reserve(rows.size());
    for (const auto& row : rows) {
        DataRow r{row.recording_id, row.patient_id, row.label, {}};
        r.features.reserve(feature_indices.size());
        for (int f : feature_indices) r.features.push_back(row.features[static_cast<std::size_t>(f)]);
        out.rows.push_back(std::move(r));
    }
    return out;
}

void Dataset::validate() const {
    std::set<std::string> present;
    for (const auto& row : rows) {
        if (row.features.size() != feature_names.size()) {
            raise(ErrorCode::schema, "row '" + row.recording_id + "' has " +
                                         std::to_string(row.features.size()) +
                                         " features, expected " +
                                         std::to_string(feature_names.size()));
        }
        if (label_index(row.label) < 0) {
            raise(ErrorCode::label, "label '" + row.label + "' not in label set");
        }
        present.insert(row.label);
        for (double v : row.features) {
            if (!std::isfinite(v)) raise(ErrorCode::data, "non-finite feature value");
        }
    }
    if (present.size() < 2) raise(ErrorCode::training, "fewer than 2 classes present");
}

Dataset select_top_k(const Dataset& dataset, const std::vector<int>& ranking, int k) {
    if (k < 1 || k > dataset.n_features() || k > static_cast<int>(ranking.size())) {
        raise(ErrorCode::parameter, "k out of range for feature selection");
    }
    return dataset.select_features({ranking.begin(), ranking.begin() + k});
}

void write_feature_csv(const Dataset& dataset, const std::string& path,
                       const std::string& comment) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(ErrorCode::io, "cannot write CSV '" + path + "'");
    if (!comment.empty()) out << "# " << comment << "\n";
    out << "recording_id,patient_id,label";
    for (const auto& name : dataset.feature_names) out << "," << name;
    out << "\n";
    char value[40];
    for (const auto& row : dataset.rows) {
        out << row.recording_id << "," << row.patient_id << "," << row.label;
        for (double v : row.features) {
            std::snprintf(value, sizeof(value), "%.9g", v);
            out << "," << value;
        }
        out << "\n";
    }
    if (!out) raise(ErrorCode::io, "short write to '" + path + "'");
}

Dataset read_feature_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorCode::io, "cannot read CSV '" + path + "'");

    Dataset dataset;
    std::string line;
    bool have_header = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const auto fields = split_csv_line(line);
        if (!have_header) {
            if (fields.size() < 4 || fields[0] != "recording_id" || fields[1] != "patient_id" ||
                fields[2] != "label") {
                raise(ErrorCode::schema, "unexpected feature CSV header in '" + path + "'");
            }
            dataset.feature_names.assign(fields.begin() + 3, fields.end());
            have_header = true;
            continue;
        }
        if (fields.size() != dataset.feature_names.size() + 3) {
            raise(ErrorCode::schema, path + ":" + std::to_string(line_no) + ": wrong column count");
        }
        DataRow row{fields[0], fields[1], fields[2], {}};
        row.features.reserve(fields.size() - 3);
        for (std::size_t i = 3; i < fields.size(); ++i) {
            try {
                std::size_t consumed = 0;
                row.features.push_back(std::stod(fields[i], &consumed));
                if (consumed != fields[i].size()) throw std::invalid_argument(fields[i]);
            } catch (const std::exception&) {
                raise(ErrorCode::schema, path + ":" + std::to_string(line_no) +
                                             ": bad numeric field '" + fields[i] + "'");
            }
        }
        dataset.rows.push_back(std::move(row));
    }
    if (!have_header) raise(ErrorCode::schema, "feature CSV '" + path + "' has no header");

    std::set<std::string> labels;
    for (const auto& row : dataset.rows) labels.insert(row.label);
    dataset.label_set.assign(labels.begin(), labels.end());
    return dataset;
}

}  // namespace specgeo
