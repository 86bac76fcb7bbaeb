#pragma once

#include <string>
#include <vector>

namespace specgeo {

struct DataRow {
    std::string recording_id;
    std::string patient_id;
    std::string label;
    std::vector<double> features;
};

/// Feature table plus the ordered class list. Feature order and label order
/// are part of every downstream contract (CSV columns, model inputs).
struct Dataset {
    std::vector<std::string> feature_names;
    std::vector<DataRow> rows;
    std::vector<std::string> label_set;

    int n_rows() const { return static_cast<int>(rows.size()); }
    int n_features() const { return static_cast<int>(feature_names.size()); }

    /// Index of a label in label_set, or -1.
    int label_index(const std::string& label) const;

    /// Rows by index, keeping feature names and label_set.
    Dataset subset(const std::vector<int>& row_indices) const;

    /// Rows whose label is one of the given ones; label_set shrinks to them.
    Dataset filter_labels(const std::vector<std::string>& labels) const;

    /// Columns by index, in the given order.
    Dataset select_features(const std::vector<int>& feature_indices) const;

    /// Checks consistent feature lengths, labels within label_set, and that
    /// at least two classes are present.
    void validate() const;
};

/// Keeps the top-k features of a ranking (feature indices, best first).
Dataset select_top_k(const Dataset& dataset, const std::vector<int>& ranking, int k);

/// Feature CSV: optional leading "# ..." comment lines, then a header
/// "recording_id,patient_id,label,<feature names>", then one row per
/// recording with floats at 9 significant digits. LF line endings.
void write_feature_csv(const Dataset& dataset, const std::string& path,
                       const std::string& comment = "");
Dataset read_feature_csv(const std::string& path);

}  // namespace specgeo
