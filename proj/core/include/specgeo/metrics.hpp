#pragma once

#include <string>
#include <vector>

namespace specgeo {

/// Confusion-derived metrics plus AUROC. For multiclass reports, recall and
/// the Jaccard scores are computed one-vs-rest and averaged both by class
/// support ("weighted", the convention matching accuracy) and unweighted
/// ("macro"). jaccard_paper uses (TP+TN) / (2(P+N) - (TP+TN));
/// jaccard_standard uses TP / (TP+FP+FN).
struct MetricsReport {
    std::vector<std::string> labels;
    std::vector<std::vector<int>> confusion;  // [true][predicted]
    int n = 0;
    bool binary = false;
    std::string positive_label;  // set for binary reports

    double accuracy = 0.0;
    double recall_weighted = 0.0;
    double recall_macro = 0.0;
    double jaccard_paper = 0.0;
    double jaccard_standard = 0.0;
    double auroc = 0.0;  // one-vs-rest weighted for multiclass
};

/// AUROC by rank statistics: the probability that a random positive outscores
/// a random negative, ties counted half. Exactly equals the all-pairs count.
double auroc_from_scores(const std::vector<double>& scores, const std::vector<int>& is_positive);

/// Metrics from class-index truth and per-row probability vectors over
/// `labels`. Multiclass conventions as described on MetricsReport.
MetricsReport compute_multiclass_metrics(const std::vector<std::string>& labels,
                                         const std::vector<int>& y_true,
                                         const std::vector<std::vector<double>>& proba);

/// Binary metrics with an explicit positive class (index into labels).
MetricsReport compute_binary_metrics(const std::vector<std::string>& labels, int positive_index,
                                     const std::vector<int>& y_true,
                                     const std::vector<std::vector<double>>& proba);

/// Recomputes the confusion-derived scalar metrics from a report's confusion
/// matrix; used to verify report integrity.
MetricsReport recompute_from_confusion(const MetricsReport& report);

}  // namespace specgeo
