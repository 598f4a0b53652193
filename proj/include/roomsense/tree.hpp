#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "roomsense/dataset.hpp"

namespace roomsense {

struct TrainConfig {
    std::size_t max_depth = 0; // 0 = unlimited
    std::size_t min_samples_leaf = 1;
    double min_gain = 1e-12;
};

// Internal nodes test one AP reading against a threshold; reading <= threshold
// routes left. Leaves keep the full class count distribution.
struct TreeNode {
    int feature = -1; // -1 marks a leaf
    double threshold = 0.0;
    std::unique_ptr<TreeNode> left;
    std::unique_ptr<TreeNode> right;
    std::map<RoomId, std::size_t> counts;

    bool is_leaf() const { return feature < 0; }
};

struct DecisionTreeModel {
    std::unique_ptr<TreeNode> root;
    std::size_t ap_count = 0;
    std::vector<RoomId> classes; // sorted distinct labels seen in training
};

// Gini impurity 1 - sum((n_k/n)^2). Throws EmptySet on zero total.
double gini(const std::map<RoomId, std::size_t>& counts);

struct SplitChoice {
    int feature = -1;
    double threshold = 0.0;
    double gain = 0.0;
};

// Exhaustive search over midpoints between consecutive distinct values of each
// candidate feature, maximizing Gini impurity decrease. Split quality is
// compared in exact integer arithmetic, ties broken by lowest feature index
// then lowest threshold. Candidates leaving either side with fewer than
// cfg.min_samples_leaf samples are skipped. Returns nullopt when no candidate
// reaches cfg.min_gain.
std::optional<SplitChoice> best_split(std::span<const LabeledSample> samples,
                                      std::span<const int> candidate_features,
                                      const TrainConfig& cfg = {});

// Plain CART: deterministic recursive greedy construction.
DecisionTreeModel fit_tree(const FingerprintDatabase& train, const TrainConfig& cfg = {});

// Per-split candidate feature provider; returns indices in [0, ap_count).
// Used by the random forest; fit_tree passes all features everywhere.
using FeatureSampler = std::function<std::vector<int>(int ap_count)>;

DecisionTreeModel fit_tree_sampled(std::span<const LabeledSample> samples, std::size_t ap_count,
                                   std::vector<RoomId> classes, const TrainConfig& cfg,
                                   const FeatureSampler& sampler);

RoomId predict(const DecisionTreeModel& model, const RssiVector& rssi);

// Leaf counts normalized over the model's class list (zeros included).
std::map<RoomId, double> predict_proba(const DecisionTreeModel& model, const RssiVector& rssi);

// Argmax with ties to the lowest room id; shared by all classifier kinds.
RoomId argmax_class(const std::map<RoomId, double>& proba);

} // namespace roomsense
