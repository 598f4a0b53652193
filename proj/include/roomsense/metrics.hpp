#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "roomsense/geometry.hpp"

namespace roomsense {

// Rows are true classes, columns are predicted classes.
struct ConfusionMatrix {
    std::vector<RoomId> classes;
    std::vector<std::vector<std::size_t>> counts;

    std::size_t total() const;
    std::size_t trace() const;
    std::vector<std::size_t> row_sums() const;
    std::vector<std::size_t> col_sums() const;
};

ConfusionMatrix confusion(std::span<const RoomId> truths, std::span<const RoomId> preds,
                          std::vector<RoomId> classes);

double accuracy(const ConfusionMatrix& cm);

// Fixed-width text rendering (the one canonical renderer).
std::string render(const ConfusionMatrix& cm);

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
};

struct RocCurve {
    std::vector<RocPoint> points; // starts at (0,0), ends at (1,1)
    double auc = 0.0;
};

// Threshold sweep over descending distinct scores; tied scores move in one
// step. AUC by the trapezoidal rule.
RocCurve roc_binary(std::span<const double> scores, std::span<const int> labels);

// One-vs-rest curve for positive_class from per-sample probability maps.
RocCurve roc_ovr(std::span<const std::map<RoomId, double>> scores,
                 std::span<const RoomId> truths, RoomId positive_class);

// Micro average: pool every (sample, class) binary decision, then sweep.
RocCurve roc_micro(std::span<const std::map<RoomId, double>> scores,
                   std::span<const RoomId> truths, std::span<const RoomId> classes);

// Macro average: mean per-class TPR over the fixed FPR grid {0, 0.01, .., 1}
// with linear interpolation; AUC by trapezoid on the grid.
RocCurve roc_macro(std::span<const RocCurve> per_class);

// Piecewise-linear TPR at the given FPR (duplicate-fpr knots keep the max).
double interpolate_tpr(const RocCurve& curve, double fpr);

} // namespace roomsense
