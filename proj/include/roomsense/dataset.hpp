#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <vector>

#include "roomsense/geometry.hpp"
#include "roomsense/mac.hpp"

namespace roomsense {

// One reading per access point, ordered by AP index, integer dBm.
using RssiVector = std::vector<int>;

struct LabeledSample {
    RssiVector rssi;
    RoomId room = 0;

    bool operator==(const LabeledSample&) const = default;
};

// The radio map: an ordered AP list plus room-labeled RSSI vectors.
struct FingerprintDatabase {
    std::vector<MacAddress> ap_macs;
    std::vector<LabeledSample> samples;

    std::size_t ap_count() const { return ap_macs.size(); }

    bool operator==(const FingerprintDatabase&) const = default;
};

// Exact multiplicity of each room label.
std::map<RoomId, std::size_t> class_counts(std::span<const LabeledSample> samples);

// Sorted distinct room labels.
std::vector<RoomId> class_labels(std::span<const LabeledSample> samples);

struct SplitSpec {
    double train_fraction = 0.7;
    std::uint64_t seed = 0;
    bool stratified = true;
};

struct SplitResult {
    FingerprintDatabase train;
    FingerprintDatabase test;
};

// Shuffle-then-partition into disjoint train/test covering every sample.
// Total train size is floor(train_fraction*n + 0.5); stratified mode assigns
// per-class seats by largest remainder so each class proportion stays within
// one sample of train_fraction. Sample order within each part follows the
// original database order.
SplitResult split(const FingerprintDatabase& db, const SplitSpec& spec);

// CSV persistence. Header row is the AP MAC addresses followed by "room";
// each data row is the integer readings followed by the integer room id.
// UTF-8, LF line endings, no quoting.
void save_csv(const FingerprintDatabase& db, const std::filesystem::path& path);
FingerprintDatabase load_csv(const std::filesystem::path& path);

} // namespace roomsense
