#include "roomsense/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "roomsense/errors.hpp"
#include "roomsense/tree.hpp"

namespace roomsense {

GaussianNBModel fit_gnb(const FingerprintDatabase& train, double variance_floor) {
    if (train.samples.empty()) throw EmptyDataset("cannot fit on an empty dataset");
    if (variance_floor <= 0) throw ConfigError("variance floor must be positive");

    GaussianNBModel model;
    model.ap_count = train.ap_count();
    model.classes = class_labels(train.samples);
    model.variance_floor = variance_floor;

    const auto counts = class_counts(train.samples);
    const auto n_classes = model.classes.size();
    const auto n_features = model.ap_count;

    model.priors.assign(n_classes, 0.0);
    model.means.assign(n_classes, std::vector<double>(n_features, 0.0));
    model.variances.assign(n_classes, std::vector<double>(n_features, 0.0));

    std::map<RoomId, std::size_t> class_index;
    for (std::size_t c = 0; c < n_classes; ++c) class_index[model.classes[c]] = c;

    for (const auto& s : train.samples) {
        if (s.rssi.size() != n_features) {
            throw ShapeError("sample width does not match access point count");
        }
        const auto c = class_index.at(s.room);
        for (std::size_t f = 0; f < n_features; ++f) {
            model.means[c][f] += static_cast<double>(s.rssi[f]);
        }
    }
    for (std::size_t c = 0; c < n_classes; ++c) {
        const auto n_c = static_cast<double>(counts.at(model.classes[c]));
        model.priors[c] = n_c / static_cast<double>(train.samples.size());
        for (auto& m : model.means[c]) m /= n_c;
    }

    for (const auto& s : train.samples) {
        const auto c = class_index.at(s.room);
        for (std::size_t f = 0; f < n_features; ++f) {
            const double d = static_cast<double>(s.rssi[f]) - model.means[c][f];
            model.variances[c][f] += d * d;
        }
    }
    for (std::size_t c = 0; c < n_classes; ++c) {
        const auto n_c = static_cast<double>(counts.at(model.classes[c]));
        for (auto& v : model.variances[c]) v = std::max(v / n_c, variance_floor);
    }
    return model;
}

std::map<RoomId, double> predict_proba_gnb(const GaussianNBModel& model, const RssiVector& rssi) {
    if (model.classes.empty()) throw EmptyDataset("model has no classes");
    if (rssi.size() != model.ap_count) {
        throw ShapeError("query width does not match access point count");
    }

    const auto n_classes = model.classes.size();
    std::vector<double> log_post(n_classes);
    for (std::size_t c = 0; c < n_classes; ++c) {
        double lp = std::log(model.priors[c]);
        for (std::size_t f = 0; f < model.ap_count; ++f) {
            const double var = model.variances[c][f];
            const double d = static_cast<double>(rssi[f]) - model.means[c][f];
            lp += -0.5 * std::log(2.0 * std::numbers::pi * var) - d * d / (2.0 * var);
        }
        log_post[c] = lp;
    }

    const double peak = *std::max_element(log_post.begin(), log_post.end());
    double total = 0.0;
    for (auto& lp : log_post) {
        lp = std::exp(lp - peak);
        total += lp;
    }

    std::map<RoomId, double> proba;
    for (std::size_t c = 0; c < n_classes; ++c) proba[model.classes[c]] = log_post[c] / total;
    return proba;
}

std::pair<RoomId, std::map<RoomId, double>> predict_gnb(const GaussianNBModel& model,
                                                        const RssiVector& rssi) {
    auto proba = predict_proba_gnb(model, rssi);
    const auto label = argmax_class(proba);
    return {label, std::move(proba)};
}

} // namespace roomsense
