#pragma once

#include <cstdint>
#include <vector>

#include "roomsense/dataset.hpp"
#include "roomsense/geometry.hpp"
#include "roomsense/mac.hpp"
#include "roomsense/rng.hpp"

namespace roomsense {

struct AccessPoint {
    int index = 0; // ordinal position in the fingerprint vector
    MacAddress mac;
    Point2D position;
    double tx_power_dbm = 20.0;
};

// Log-distance path loss with Gaussian shadowing. Defaults are standard
// indoor values; readings are clamped to the radio's reportable range.
struct PathLossParams {
    double pl0_db = 40.0;        // path loss at the 1 m reference distance
    double exponent = 3.0;       // n >= 1
    double shadow_sigma_db = 2.0;
    int floor_dbm = -100;
    int ceiling_dbm = -30;
};

struct RadioEnvironment {
    std::vector<Room> rooms;
    std::vector<AccessPoint> aps;
    PathLossParams params;
    std::uint64_t seed = 0;

    // Throws ConfigError on inconsistent geometry or AP indexing.
    void validate() const;
};

// Integer dBm reading for one AP at a point. Distance is clamped below 1 m.
int rssi_at(const RadioEnvironment& env, const AccessPoint& ap, Point2D p, RandomStream& rng);

// One rssi_at reading per AP, ordered by AP index.
RssiVector sample_vector(const RadioEnvironment& env, Point2D p, RandomStream& rng);

// Offline phase: samples_per_room points drawn uniformly inside each room,
// room-major, each paired with its sampled vector and room label.
FingerprintDatabase collect_fingerprints(const RadioEnvironment& env, int samples_per_room,
                                         RandomStream& rng);

} // namespace roomsense
