#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "roomsense/channel.hpp"
#include "roomsense/geometry.hpp"
#include "roomsense/model_io.hpp"
#include "roomsense/radio.hpp"

namespace roomsense {

inline constexpr int kRoomCount = 3; // 3 lights + 3 fans on the relay bank

// One-byte room code: 0x00 away/unknown, 0x01..0x03 rooms 1..3.
struct ControlSignal {
    std::uint8_t code = 0;
};

struct ActuatorBank {
    std::array<bool, kRoomCount> lights{};
    std::array<bool, kRoomCount> fans{};

    // The single occupied room when exactly one light/fan pair is on.
    std::optional<RoomId> active_room() const;

    bool operator==(const ActuatorBank&) const = default;
};

// Room k on, every other room off; code 0 turns everything off. Pure function
// of the signal alone. Throws InvalidCode above the room count.
ActuatorBank apply_signal(const ActuatorBank& bank, ControlSignal sig);

struct TrajectoryPoint {
    double t = 0.0;
    Point2D p;
};

// Piecewise-linear path; clamped to the first/last waypoint outside the span.
struct Trajectory {
    std::vector<TrajectoryPoint> waypoints;

    Point2D at(double t) const;
    void validate() const; // strictly increasing times, at least one waypoint
};

// Location source for the wearable loop: either a trained model over live
// RSSI samples, or the ground-truth oracle used by tests.
class Localizer {
public:
    virtual ~Localizer() = default;
    virtual ControlSignal locate(const RadioEnvironment& env, Point2D position,
                                 RandomStream& rng) const = 0;
};

struct WearableNode {
    Point2D position;
    const AnyModel* model = nullptr;
    double sample_period = 1.0;
    // Abstain rule: report code 0 when the top class probability falls below
    // this threshold. 0 disables abstention (the default).
    double abstain_threshold = 0.0;
};

// Sense -> classify -> signal. Throws ShapeError when the model's AP count
// does not match the environment.
ControlSignal classify_and_signal(const WearableNode& node, const RadioEnvironment& env,
                                  RandomStream& rng);

class ModelLocalizer : public Localizer {
public:
    ModelLocalizer(const AnyModel& model, double abstain_threshold = 0.0)
        : model_(&model), abstain_threshold_(abstain_threshold) {}
    ControlSignal locate(const RadioEnvironment& env, Point2D position,
                         RandomStream& rng) const override;

private:
    const AnyModel* model_;
    double abstain_threshold_;
};

// Ground truth: the room containing the position, 0 outside all rooms.
class OracleLocalizer : public Localizer {
public:
    ControlSignal locate(const RadioEnvironment& env, Point2D position,
                         RandomStream& rng) const override;
};

struct ScenarioConfig {
    double duration = 180.0;
    double sample_period = 1.0;
    bool reliable = false;
    int retries = 3;
    double ack_timeout = 0.05;
    double abstain_threshold = 0.0; // forwarded to the wearable's localizer
    ChannelConfig channel;
};

struct TickRecord {
    double t = 0.0;
    std::optional<RoomId> truth_room;
    int predicted_code = 0;
    std::string frame_outcome; // "delivered", "lost", "error:<status>"
    ActuatorBank bank;         // state at the end of the tick
    double actuation_latency = 0.0; // valid when delivered
};

struct ScenarioSummary {
    std::size_t ticks = 0;
    std::size_t post_warmup_ticks = 0; // from the first accepted delivery on
    std::size_t matched_ticks = 0;
    double tracking_accuracy = 0.0;
    std::size_t frames_sent = 0;
    std::size_t frames_lost = 0;
    std::size_t frames_delivered = 0;
    double mean_actuation_latency = 0.0; // virtual seconds
};

struct ScenarioLog {
    std::vector<TickRecord> ticks;
    ScenarioSummary summary;
    std::vector<ChannelEvent> channel_events;
};

// Algorithm end to end over virtual time: every sample_period the wearable
// senses at its trajectory position, classifies, and unicasts the signal; the
// control unit decodes authenticated frames and drives the actuator bank.
// Link and classifier errors are recorded in the log, never thrown.
ScenarioLog run_scenario(const RadioEnvironment& env, const Localizer& localizer,
                         const Trajectory& trajectory, const ScenarioConfig& cfg,
                         std::uint64_t seed);

std::string scenario_to_jsonl(const ScenarioLog& log);
std::string summary_to_json(const ScenarioSummary& summary);

} // namespace roomsense
