#include "roomsense/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "roomsense/errors.hpp"

namespace roomsense {

std::size_t ConfusionMatrix::total() const {
    std::size_t sum = 0;
    for (const auto& row : counts) {
        for (const auto c : row) sum += c;
    }
    return sum;
}

std::size_t ConfusionMatrix::trace() const {
    std::size_t sum = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) sum += counts[i][i];
    return sum;
}

std::vector<std::size_t> ConfusionMatrix::row_sums() const {
    std::vector<std::size_t> sums(counts.size(), 0);
    for (std::size_t i = 0; i < counts.size(); ++i) {
        sums[i] = std::accumulate(counts[i].begin(), counts[i].end(), std::size_t{0});
    }
    return sums;
}

std::vector<std::size_t> ConfusionMatrix::col_sums() const {
    std::vector<std::size_t> sums(classes.size(), 0);
    for (const auto& row : counts) {
        for (std::size_t j = 0; j < row.size(); ++j) sums[j] += row[j];
    }
    return sums;
}

ConfusionMatrix confusion(std::span<const RoomId> truths, std::span<const RoomId> preds,
                          std::vector<RoomId> classes) {
    if (truths.size() != preds.size()) {
        throw LengthMismatch("truth and prediction lists differ in length");
    }
    if (classes.empty()) throw EmptySet("confusion matrix needs at least one class");

    std::map<RoomId, std::size_t> index;
    for (std::size_t i = 0; i < classes.size(); ++i) index[classes[i]] = i;

    ConfusionMatrix cm;
    cm.classes = std::move(classes);
    cm.counts.assign(cm.classes.size(), std::vector<std::size_t>(cm.classes.size(), 0));
    for (std::size_t i = 0; i < truths.size(); ++i) {
        const auto r = index.find(truths[i]);
        const auto c = index.find(preds[i]);
        if (r == index.end()) throw UnknownLabel("unknown true label " + std::to_string(truths[i]));
        if (c == index.end()) throw UnknownLabel("unknown predicted label " + std::to_string(preds[i]));
        ++cm.counts[r->second][c->second];
    }
    return cm;
}

double accuracy(const ConfusionMatrix& cm) {
    const auto n = cm.total();
    if (n == 0) throw EmptySet("accuracy of an empty matrix");
    return static_cast<double>(cm.trace()) / static_cast<double>(n);
}

std::string render(const ConfusionMatrix& cm) {
    std::size_t width = 5;
    for (const auto label : cm.classes) {
        width = std::max(width, std::to_string(label).size() + 2);
    }
    for (const auto& row : cm.counts) {
        for (const auto c : row) width = std::max(width, std::to_string(c).size() + 2);
    }

    std::ostringstream out;
    auto cell = [&](const std::string& text) {
        out << std::string(width - text.size(), ' ') << text;
    };

    cell("t\\p");
    for (const auto label : cm.classes) cell(std::to_string(label));
    out << '\n';
    for (std::size_t i = 0; i < cm.classes.size(); ++i) {
        cell(std::to_string(cm.classes[i]));
        for (const auto c : cm.counts[i]) cell(std::to_string(c));
        out << '\n';
    }
    return out.str();
}

RocCurve roc_binary(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size()) {
        throw LengthMismatch("score and label lists differ in length");
    }
    std::size_t pos = 0;
    std::size_t neg = 0;
    for (const auto l : labels) (l ? pos : neg) += 1;
    if (pos == 0 || neg == 0) {
        throw DegenerateClass("ROC needs at least one positive and one negative");
    }

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    RocCurve curve;
    curve.points.push_back({0.0, 0.0});

    std::size_t tp = 0;
    std::size_t fp = 0;
    double prev_fpr = 0.0;
    double prev_tpr = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        const double s = scores[order[i]];
        while (i < order.size() && scores[order[i]] == s) {
            (labels[order[i]] ? tp : fp) += 1;
            ++i;
        }
        const double fpr = static_cast<double>(fp) / static_cast<double>(neg);
        const double tpr = static_cast<double>(tp) / static_cast<double>(pos);
        curve.points.push_back({fpr, tpr});
        curve.auc += (fpr - prev_fpr) * (tpr + prev_tpr) / 2.0;
        prev_fpr = fpr;
        prev_tpr = tpr;
    }
    return curve;
}

RocCurve roc_ovr(std::span<const std::map<RoomId, double>> scores,
                 std::span<const RoomId> truths, RoomId positive_class) {
    if (scores.size() != truths.size()) {
        throw LengthMismatch("score and truth lists differ in length");
    }
    std::vector<double> s;
    std::vector<int> y;
    s.reserve(scores.size());
    y.reserve(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const auto it = scores[i].find(positive_class);
        s.push_back(it == scores[i].end() ? 0.0 : it->second);
        y.push_back(truths[i] == positive_class ? 1 : 0);
    }
    return roc_binary(s, y);
}

RocCurve roc_micro(std::span<const std::map<RoomId, double>> scores,
                   std::span<const RoomId> truths, std::span<const RoomId> classes) {
    if (scores.size() != truths.size()) {
        throw LengthMismatch("score and truth lists differ in length");
    }
    std::vector<double> s;
    std::vector<int> y;
    s.reserve(scores.size() * classes.size());
    y.reserve(scores.size() * classes.size());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        for (const auto label : classes) {
            const auto it = scores[i].find(label);
            s.push_back(it == scores[i].end() ? 0.0 : it->second);
            y.push_back(truths[i] == label ? 1 : 0);
        }
    }
    return roc_binary(s, y);
}

double interpolate_tpr(const RocCurve& curve, double fpr) {
    const auto& pts = curve.points;
    if (pts.empty()) throw EmptySet("interpolating an empty curve");
    if (fpr < pts.front().fpr) return pts.front().tpr;
    if (fpr > pts.back().fpr) return pts.back().tpr;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].fpr < fpr) continue;
        if (pts[i].fpr == fpr) {
            // Vertical runs share one fpr; report the topmost point.
            double best = pts[i].tpr;
            for (std::size_t j = i + 1; j < pts.size() && pts[j].fpr == fpr; ++j) {
                best = std::max(best, pts[j].tpr);
            }
            return best;
        }
        const auto& a = pts[i - 1];
        const auto& b = pts[i];
        const double t = (fpr - a.fpr) / (b.fpr - a.fpr);
        return a.tpr + t * (b.tpr - a.tpr);
    }
    return pts.back().tpr;
}

RocCurve roc_macro(std::span<const RocCurve> per_class) {
    if (per_class.empty()) throw EmptySet("macro average of zero curves");

    RocCurve curve;
    const int grid = 100;
    double prev_fpr = 0.0;
    double prev_tpr = 0.0;
    for (int g = 0; g <= grid; ++g) {
        const double fpr = static_cast<double>(g) / grid;
        double tpr = 0.0;
        for (const auto& c : per_class) tpr += interpolate_tpr(c, fpr);
        tpr /= static_cast<double>(per_class.size());
        curve.points.push_back({fpr, tpr});
        if (g > 0) curve.auc += (fpr - prev_fpr) * (tpr + prev_tpr) / 2.0;
        prev_fpr = fpr;
        prev_tpr = tpr;
    }
    return curve;
}

} // namespace roomsense
