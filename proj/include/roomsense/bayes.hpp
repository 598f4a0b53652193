#pragma once

#include <map>
#include <utility>
#include <vector>

#include "roomsense/dataset.hpp"

namespace roomsense {

// Gaussian Naive Bayes over per-class, per-feature mean/variance (dBm, dBm^2).
struct GaussianNBModel {
    std::size_t ap_count = 0;
    std::vector<RoomId> classes;
    std::vector<double> priors;                 // one per class, sums to 1
    std::vector<std::vector<double>> means;     // [class][feature]
    std::vector<std::vector<double>> variances; // [class][feature], floored
    double variance_floor = 1e-6;
};

GaussianNBModel fit_gnb(const FingerprintDatabase& train, double variance_floor = 1e-6);

std::map<RoomId, double> predict_proba_gnb(const GaussianNBModel& model, const RssiVector& rssi);

std::pair<RoomId, std::map<RoomId, double>> predict_gnb(const GaussianNBModel& model,
                                                        const RssiVector& rssi);

} // namespace roomsense
