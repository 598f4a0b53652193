#include "roomsense/radio.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "roomsense/errors.hpp"

namespace roomsense {

void RadioEnvironment::validate() const {
    if (rooms.empty()) throw ConfigError("environment has no rooms");
    if (aps.empty()) throw ConfigError("environment has no access points");
    for (const auto& room : rooms) {
        if (!room.bounds.valid()) {
            throw ConfigError("room " + std::to_string(room.id) + " has degenerate bounds");
        }
    }
    for (std::size_t i = 0; i < rooms.size(); ++i) {
        for (std::size_t j = i + 1; j < rooms.size(); ++j) {
            if (rooms[i].id == rooms[j].id) {
                throw ConfigError("duplicate room id " + std::to_string(rooms[i].id));
            }
            if (rooms[i].bounds.overlaps(rooms[j].bounds)) {
                throw ConfigError("rooms " + std::to_string(rooms[i].id) + " and " +
                                  std::to_string(rooms[j].id) + " overlap");
            }
        }
    }
    for (std::size_t i = 0; i < aps.size(); ++i) {
        if (aps[i].index != static_cast<int>(i)) {
            throw ConfigError("access point index mismatch at position " + std::to_string(i));
        }
        for (std::size_t j = i + 1; j < aps.size(); ++j) {
            if (aps[i].mac == aps[j].mac) {
                throw ConfigError("duplicate access point MAC " + aps[i].mac.str());
            }
        }
    }
    if (params.exponent < 1) throw ConfigError("path loss exponent must be at least 1");
    if (params.shadow_sigma_db < 0) throw ConfigError("shadow sigma must be nonnegative");
    if (params.floor_dbm > params.ceiling_dbm) throw ConfigError("rssi floor exceeds ceiling");
}

int rssi_at(const RadioEnvironment& env, const AccessPoint& ap, Point2D p, RandomStream& rng) {
    const auto& params = env.params;
    const double d = std::max(distance(ap.position, p), 1.0);
    const double mean = ap.tx_power_dbm - params.pl0_db - 10.0 * params.exponent * std::log10(d);
    const double raw = mean + rng.normal(0.0, params.shadow_sigma_db);
    const double clamped = std::clamp(raw, static_cast<double>(params.floor_dbm),
                                      static_cast<double>(params.ceiling_dbm));
    return static_cast<int>(std::lround(clamped));
}

RssiVector sample_vector(const RadioEnvironment& env, Point2D p, RandomStream& rng) {
    RssiVector out;
    out.reserve(env.aps.size());
    for (const auto& ap : env.aps) out.push_back(rssi_at(env, ap, p, rng));
    return out;
}

FingerprintDatabase collect_fingerprints(const RadioEnvironment& env, int samples_per_room,
                                         RandomStream& rng) {
    env.validate();
    if (samples_per_room <= 0) throw ConfigError("samples per room must be positive");

    FingerprintDatabase db;
    db.ap_macs.reserve(env.aps.size());
    for (const auto& ap : env.aps) db.ap_macs.push_back(ap.mac);
    db.samples.reserve(env.rooms.size() * static_cast<std::size_t>(samples_per_room));

    for (const auto& room : env.rooms) {
        for (int k = 0; k < samples_per_room; ++k) {
            const Point2D p{rng.uniform(room.bounds.min.x, room.bounds.max.x),
                            rng.uniform(room.bounds.min.y, room.bounds.max.y)};
            db.samples.push_back({sample_vector(env, p, rng), room.id});
        }
    }
    return db;
}

} // namespace roomsense
