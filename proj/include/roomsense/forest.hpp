#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "roomsense/dataset.hpp"
#include "roomsense/tree.hpp"

namespace roomsense {

struct ForestConfig {
    std::size_t n_trees = 25;
    std::size_t feature_subsample = 0; // per-split candidate count; 0 = ceil(sqrt(ap_count))
    bool bootstrap = true;
    TrainConfig tree;
    std::uint64_t seed = 0;
};

struct RandomForestModel {
    std::vector<DecisionTreeModel> trees;
    std::size_t ap_count = 0;
    std::vector<RoomId> classes;
};

// Bagging: each tree fits a bootstrap resample (train-sized, with replacement)
// with uniform per-split feature subsampling. Per-tree streams are derived
// from (seed, tree index) so the result is independent of evaluation order.
RandomForestModel fit_forest(const FingerprintDatabase& train, const ForestConfig& cfg);

// Mean of the member trees' probability maps.
std::map<RoomId, double> predict_proba_forest(const RandomForestModel& model,
                                              const RssiVector& rssi);

std::pair<RoomId, std::map<RoomId, double>> predict_forest(const RandomForestModel& model,
                                                           const RssiVector& rssi);

} // namespace roomsense
