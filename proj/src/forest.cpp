#include "roomsense/forest.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "roomsense/errors.hpp"
#include "roomsense/rng.hpp"

namespace roomsense {

RandomForestModel fit_forest(const FingerprintDatabase& train, const ForestConfig& cfg) {
    if (train.samples.empty()) throw EmptyDataset("cannot fit on an empty dataset");
    if (cfg.n_trees == 0) throw ConfigError("forest needs at least one tree");

    const auto ap_count = train.ap_count();
    std::size_t subsample = cfg.feature_subsample;
    if (subsample == 0) {
        subsample = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(ap_count))));
    }
    subsample = std::min(subsample, ap_count);

    RandomForestModel model;
    model.ap_count = ap_count;
    model.classes = class_labels(train.samples);
    model.trees.reserve(cfg.n_trees);

    const auto n = train.samples.size();
    std::vector<int> pool(ap_count);
    for (std::size_t f = 0; f < ap_count; ++f) pool[f] = static_cast<int>(f);

    for (std::size_t t = 0; t < cfg.n_trees; ++t) {
        const auto purpose = "forest.tree." + std::to_string(t);
        auto stream = std::make_shared<RandomStream>(derive_stream_seed(cfg.seed, purpose));

        std::vector<LabeledSample> bag;
        bag.reserve(n);
        if (cfg.bootstrap) {
            for (std::size_t i = 0; i < n; ++i) {
                bag.push_back(train.samples[stream->below(n)]);
            }
        } else {
            bag.assign(train.samples.begin(), train.samples.end());
        }

        FeatureSampler sampler = [stream, pool, subsample](int count) {
            auto features = pool;
            features.resize(static_cast<std::size_t>(count));
            stream->shuffle(features);
            features.resize(std::min(subsample, features.size()));
            std::sort(features.begin(), features.end());
            return features;
        };

        model.trees.push_back(
            fit_tree_sampled(bag, ap_count, model.classes, cfg.tree, sampler));
    }
    return model;
}

std::map<RoomId, double> predict_proba_forest(const RandomForestModel& model,
                                              const RssiVector& rssi) {
    if (model.trees.empty()) throw EmptyDataset("forest has no trees");

    std::map<RoomId, double> proba;
    for (const auto label : model.classes) proba[label] = 0.0;
    for (const auto& tree : model.trees) {
        for (const auto& [label, p] : predict_proba(tree, rssi)) proba[label] += p;
    }
    const auto k = static_cast<double>(model.trees.size());
    for (auto& [label, p] : proba) p /= k;
    return proba;
}

std::pair<RoomId, std::map<RoomId, double>> predict_forest(const RandomForestModel& model,
                                                           const RssiVector& rssi) {
    auto proba = predict_proba_forest(model, rssi);
    const auto label = argmax_class(proba);
    return {label, std::move(proba)};
}

} // namespace roomsense
