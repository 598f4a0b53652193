#include "roomsense/tree.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "roomsense/errors.hpp"

namespace roomsense {

double gini(const std::map<RoomId, std::size_t>& counts) {
    std::size_t total = 0;
    for (const auto& [label, count] : counts) total += count;
    if (total == 0) throw EmptySet("gini of an empty set");
    double sum_sq = 0.0;
    for (const auto& [label, count] : counts) {
        const double p = static_cast<double>(count) / static_cast<double>(total);
        sum_sq += p * p;
    }
    return 1.0 - sum_sq;
}

namespace {

using i128 = __int128;

// Split quality SL/nL + SR/nR where S* is the sum of squared class counts on
// one side. Maximizing it minimizes the Gini-weighted child impurity, and as
// a ratio of integers it compares exactly.
struct Quality {
    i128 num = 0; // SL*nR + SR*nL
    i128 den = 1; // nL*nR

    bool better_than(const Quality& other) const {
        return num * other.den > other.num * den;
    }
};

struct Candidate {
    int feature;
    double threshold;
    Quality quality;
    std::size_t n_left;
};

i128 sum_sq(const std::map<RoomId, std::size_t>& counts) {
    i128 s = 0;
    for (const auto& [label, count] : counts) {
        s += static_cast<i128>(count) * static_cast<i128>(count);
    }
    return s;
}

} // namespace

std::optional<SplitChoice> best_split(std::span<const LabeledSample> samples,
                                      std::span<const int> candidate_features,
                                      const TrainConfig& cfg) {
    const std::size_t n = samples.size();
    if (n < 2) return std::nullopt;

    const auto parent_counts = class_counts(samples);
    if (parent_counts.size() < 2) return std::nullopt;
    const i128 parent_sq = sum_sq(parent_counts);

    std::optional<Candidate> best;
    std::vector<std::size_t> order(n);

    for (const int feature : candidate_features) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return samples[a].rssi[feature] < samples[b].rssi[feature];
        });

        std::map<RoomId, std::size_t> left_counts;
        std::map<RoomId, std::size_t> right_counts = parent_counts;

        for (std::size_t i = 0; i + 1 < n; ++i) {
            const auto& sample = samples[order[i]];
            ++left_counts[sample.room];
            auto it = right_counts.find(sample.room);
            if (--it->second == 0) right_counts.erase(it);

            const int v = sample.rssi[feature];
            const int next = samples[order[i + 1]].rssi[feature];
            if (v == next) continue;

            const std::size_t n_left = i + 1;
            const std::size_t n_right = n - n_left;
            if (n_left < cfg.min_samples_leaf || n_right < cfg.min_samples_leaf) continue;

            Candidate cand;
            cand.feature = feature;
            cand.threshold = (static_cast<double>(v) + static_cast<double>(next)) / 2.0;
            cand.quality.num = sum_sq(left_counts) * static_cast<i128>(n_right) +
                               sum_sq(right_counts) * static_cast<i128>(n_left);
            cand.quality.den = static_cast<i128>(n_left) * static_cast<i128>(n_right);
            cand.n_left = n_left;

            // Strict improvement keeps the earliest candidate on ties, i.e.
            // the lowest feature index then the lowest threshold, assuming
            // candidate_features is ascending.
            if (!best || cand.quality.better_than(best->quality)) best = cand;
        }
    }

    if (!best) return std::nullopt;

    // gain = quality/n - parent_sq/n^2, over the common denominator
    // n^2 * nL * nR. The numerator is an exact integer, so a zero-gain best
    // split is rejected exactly rather than by floating point luck.
    const auto n128 = static_cast<i128>(n);
    const i128 gain_num = n128 * best->quality.num - parent_sq * best->quality.den;
    if (gain_num <= 0) return std::nullopt;

    const double gain_den = static_cast<double>(n) * static_cast<double>(n) *
                            static_cast<double>(best->n_left) *
                            static_cast<double>(n - best->n_left);
    const double gain = static_cast<double>(gain_num) / gain_den;
    if (gain < cfg.min_gain) return std::nullopt;

    return SplitChoice{best->feature, best->threshold, gain};
}

namespace {

std::unique_ptr<TreeNode> build(std::vector<LabeledSample>& samples, std::size_t ap_count,
                                const TrainConfig& cfg, const FeatureSampler& sampler,
                                std::size_t depth) {
    auto node = std::make_unique<TreeNode>();
    node->counts = class_counts(samples);

    if (node->counts.size() < 2) return node;
    if (cfg.max_depth > 0 && depth >= cfg.max_depth) return node;
    if (samples.size() < 2 * cfg.min_samples_leaf) return node;

    const auto features = sampler(static_cast<int>(ap_count));
    const auto choice = best_split(samples, features, cfg);
    if (!choice) return node;

    std::vector<LabeledSample> left;
    std::vector<LabeledSample> right;
    for (auto& s : samples) {
        auto& side = s.rssi[choice->feature] <= choice->threshold ? left : right;
        side.push_back(std::move(s));
    }
    samples.clear();
    samples.shrink_to_fit();

    node->feature = choice->feature;
    node->threshold = choice->threshold;
    node->left = build(left, ap_count, cfg, sampler, depth + 1);
    node->right = build(right, ap_count, cfg, sampler, depth + 1);
    return node;
}

std::vector<int> all_features(int ap_count) {
    std::vector<int> features(static_cast<std::size_t>(ap_count));
    std::iota(features.begin(), features.end(), 0);
    return features;
}

} // namespace

DecisionTreeModel fit_tree_sampled(std::span<const LabeledSample> samples, std::size_t ap_count,
                                   std::vector<RoomId> classes, const TrainConfig& cfg,
                                   const FeatureSampler& sampler) {
    if (samples.empty()) throw EmptyDataset("cannot fit a tree on an empty dataset");
    for (const auto& s : samples) {
        if (s.rssi.size() != ap_count) {
            throw ShapeError("sample width does not match access point count");
        }
    }

    DecisionTreeModel model;
    model.ap_count = ap_count;
    model.classes = std::move(classes);

    std::vector<LabeledSample> working(samples.begin(), samples.end());
    model.root = build(working, ap_count, cfg, sampler, 0);
    return model;
}

DecisionTreeModel fit_tree(const FingerprintDatabase& train, const TrainConfig& cfg) {
    return fit_tree_sampled(train.samples, train.ap_count(), class_labels(train.samples), cfg,
                            all_features);
}

namespace {

const TreeNode* descend(const DecisionTreeModel& model, const RssiVector& rssi) {
    if (!model.root) throw EmptyDataset("model has no tree");
    if (rssi.size() != model.ap_count) {
        throw ShapeError("query width does not match access point count");
    }
    const TreeNode* node = model.root.get();
    while (!node->is_leaf()) {
        node = rssi[node->feature] <= node->threshold ? node->left.get() : node->right.get();
    }
    return node;
}

} // namespace

RoomId predict(const DecisionTreeModel& model, const RssiVector& rssi) {
    return argmax_class(predict_proba(model, rssi));
}

std::map<RoomId, double> predict_proba(const DecisionTreeModel& model, const RssiVector& rssi) {
    const TreeNode* leaf = descend(model, rssi);
    std::size_t total = 0;
    for (const auto& [label, count] : leaf->counts) total += count;

    std::map<RoomId, double> proba;
    for (const auto label : model.classes) proba[label] = 0.0;
    for (const auto& [label, count] : leaf->counts) {
        proba[label] = static_cast<double>(count) / static_cast<double>(total);
    }
    return proba;
}

RoomId argmax_class(const std::map<RoomId, double>& proba) {
    if (proba.empty()) throw EmptySet("argmax over an empty distribution");
    auto best = proba.begin();
    for (auto it = std::next(proba.begin()); it != proba.end(); ++it) {
        if (it->second > best->second) best = it;
    }
    return best->first;
}

} // namespace roomsense
