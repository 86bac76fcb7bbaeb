#include "specgeo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "specgeo/error.hpp"

namespace specgeo {
namespace {

int argmax(const std::vector<double>& v) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(v.size()); ++i) {
        if (v[static_cast<std::size_t>(i)] > v[static_cast<std::size_t>(best)]) best = i;
    }
    return best;
}

struct Counts {
    double tp = 0, tn = 0, fp = 0, fn = 0;
    double p() const { return tp + fn; }
    double n() const { return tn + fp; }
    double total() const { return tp + tn + fp + fn; }
    double accuracy() const { return (tp + tn) / total(); }
    double recall() const { return p() > 0 ? tp / p() : 0.0; }
    double jaccard_paper() const {
        return (tp + tn) / (2.0 * (p() + n()) - (tp + tn));
    }
    double jaccard_standard() const {
        const double denom = tp + fp + fn;
        return denom > 0 ? tp / denom : 0.0;
    }
};

Counts one_vs_rest(const std::vector<std::vector<int>>& confusion, int c) {
    const int k = static_cast<int>(confusion.size());
    Counts counts;
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            const double v = confusion[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (i == c && j == c) {
                counts.tp += v;
            } else if (i == c) {
                counts.fn += v;
            } else if (j == c) {
                counts.fp += v;
            } else {
                counts.tn += v;
            }
        }
    }
    return counts;
}

void fill_multiclass_scalars(MetricsReport& report) {
    const int k = static_cast<int>(report.labels.size());
    double trace = 0.0;
    for (int c = 0; c < k; ++c) {
        trace += report.confusion[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
    }
    report.accuracy = report.n > 0 ? trace / report.n : 0.0;

    double weighted_recall = 0.0, macro_recall = 0.0;
    double weighted_jp = 0.0, weighted_js = 0.0;
    int present = 0;
    for (int c = 0; c < k; ++c) {
        const Counts counts = one_vs_rest(report.confusion, c);
        const double support = counts.p();
        if (support == 0) continue;
        ++present;
        const double share = support / report.n;
        weighted_recall += share * counts.recall();
        macro_recall += counts.recall();
        weighted_jp += share * counts.jaccard_paper();
        weighted_js += share * counts.jaccard_standard();
    }
    report.recall_weighted = weighted_recall;
    report.recall_macro = present > 0 ? macro_recall / present : 0.0;
    report.jaccard_paper = weighted_jp;
    report.jaccard_standard = weighted_js;
}

void fill_binary_scalars(MetricsReport& report, int positive_index) {
    const Counts counts = one_vs_rest(report.confusion, positive_index);
    report.accuracy = counts.accuracy();
    report.recall_weighted = counts.recall();
    const Counts neg = one_vs_rest(report.confusion, positive_index == 0 ? 1 : 0);
    report.recall_macro = 0.5 * (counts.recall() + neg.recall());
    report.jaccard_paper = counts.jaccard_paper();
    report.jaccard_standard = counts.jaccard_standard();
}

}  // namespace

double auroc_from_scores(const std::vector<double>& scores, const std::vector<int>& is_positive) {
    if (scores.size() != is_positive.size() || scores.empty()) {
        raise(ErrorCode::parameter, "scores/labels size mismatch");
    }
    const auto n = scores.size();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        return scores[static_cast<std::size_t>(i)] < scores[static_cast<std::size_t>(j)];
    });

    double rank_sum_pos = 0.0;
    std::size_t n_pos = 0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[static_cast<std::size_t>(order[j])] ==
                            scores[static_cast<std::size_t>(order[i])]) {
            ++j;
        }
        // Tie group occupies 1-based ranks [i+1, j]; midrank is their mean.
        const double midrank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
        for (std::size_t t = i; t < j; ++t) {
            if (is_positive[static_cast<std::size_t>(order[t])]) {
                rank_sum_pos += midrank;
                ++n_pos;
            }
        }
        i = j;
    }
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0) {
        raise(ErrorCode::parameter, "AUROC needs both positive and negative samples");
    }
    const double u =
        rank_sum_pos - 0.5 * static_cast<double>(n_pos) * static_cast<double>(n_pos + 1);
    return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

MetricsReport compute_multiclass_metrics(const std::vector<std::string>& labels,
                                         const std::vector<int>& y_true,
                                         const std::vector<std::vector<double>>& proba) {
    if (y_true.size() != proba.size() || y_true.empty()) {
        raise(ErrorCode::parameter, "truth/probability size mismatch");
    }
    const int k = static_cast<int>(labels.size());
    MetricsReport report;
    report.labels = labels;
    report.n = static_cast<int>(y_true.size());
    report.confusion.assign(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k), 0));
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const int truth = y_true[i];
        if (truth < 0 || truth >= k) raise(ErrorCode::label, "truth index out of range");
        report.confusion[static_cast<std::size_t>(truth)][static_cast<std::size_t>(argmax(proba[i]))]++;
    }
    fill_multiclass_scalars(report);

    // One-vs-rest AUROC, class-support weighted over classes with both sides.
    double auroc_acc = 0.0, weight_acc = 0.0;
    for (int c = 0; c < k; ++c) {
        std::size_t support = 0;
        for (std::size_t i = 0; i < y_true.size(); ++i) {
            if (y_true[i] == c) ++support;
        }
        if (support == 0 || support == y_true.size()) continue;
        std::vector<double> scores(y_true.size());
        std::vector<int> pos(y_true.size());
        for (std::size_t i = 0; i < y_true.size(); ++i) {
            scores[i] = proba[i][static_cast<std::size_t>(c)];
            pos[i] = y_true[i] == c ? 1 : 0;
        }
        auroc_acc += static_cast<double>(support) * auroc_from_scores(scores, pos);
        weight_acc += static_cast<double>(support);
    }
    report.auroc = weight_acc > 0 ? auroc_acc / weight_acc : 0.0;
    return report;
}

MetricsReport compute_binary_metrics(const std::vector<std::string>& labels, int positive_index,
                                     const std::vector<int>& y_true,
                                     const std::vector<std::vector<double>>& proba) {
    if (labels.size() != 2) raise(ErrorCode::parameter, "binary metrics need exactly 2 labels");
    if (positive_index < 0 || positive_index > 1) {
        raise(ErrorCode::parameter, "positive index out of range");
    }
    if (y_true.size() != proba.size() || y_true.empty()) {
        raise(ErrorCode::parameter, "truth/probability size mismatch");
    }

    MetricsReport report;
    report.labels = labels;
    report.binary = true;
    report.positive_label = labels[static_cast<std::size_t>(positive_index)];
    report.n = static_cast<int>(y_true.size());
    report.confusion.assign(2, std::vector<int>(2, 0));
    std::vector<double> scores(y_true.size());
    std::vector<int> pos(y_true.size());
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const int truth = y_true[i];
        if (truth < 0 || truth > 1) raise(ErrorCode::label, "truth index out of range");
        report.confusion[static_cast<std::size_t>(truth)][static_cast<std::size_t>(argmax(proba[i]))]++;
        scores[i] = proba[i][static_cast<std::size_t>(positive_index)];
        pos[i] = truth == positive_index ? 1 : 0;
    }
    fill_binary_scalars(report, positive_index);
    report.auroc = auroc_from_scores(scores, pos);
    return report;
}

MetricsReport recompute_from_confusion(const MetricsReport& report) {
    MetricsReport out = report;
    if (report.binary) {
        int positive_index = 0;
        for (std::size_t i = 0; i < report.labels.size(); ++i) {
            if (report.labels[i] == report.positive_label) positive_index = static_cast<int>(i);
        }
        fill_binary_scalars(out, positive_index);
    } else {
        fill_multiclass_scalars(out);
    }
    return out;
}

}  // namespace specgeo
