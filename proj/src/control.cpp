#include "roomsense/control.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

#include "roomsense/errors.hpp"

namespace roomsense {

std::optional<RoomId> ActuatorBank::active_room() const {
    std::optional<RoomId> found;
    for (int i = 0; i < kRoomCount; ++i) {
        if (!lights[i] && !fans[i]) continue;
        if (found || !(lights[i] && fans[i])) return std::nullopt;
        found = i + 1;
    }
    return found;
}

ActuatorBank apply_signal(const ActuatorBank& bank, ControlSignal sig) {
    (void)bank; // the new state depends on the signal alone
    if (sig.code > kRoomCount) {
        throw InvalidCode("control code " + std::to_string(sig.code) + " exceeds the room count");
    }
    ActuatorBank next;
    if (sig.code > 0) {
        next.lights[sig.code - 1] = true;
        next.fans[sig.code - 1] = true;
    }
    return next;
}

void Trajectory::validate() const {
    if (waypoints.empty()) throw ConfigError("trajectory has no waypoints");
    for (std::size_t i = 1; i < waypoints.size(); ++i) {
        if (waypoints[i].t <= waypoints[i - 1].t) {
            throw ConfigError("trajectory times must strictly increase");
        }
    }
}

Point2D Trajectory::at(double t) const {
    validate();
    if (t <= waypoints.front().t) return waypoints.front().p;
    if (t >= waypoints.back().t) return waypoints.back().p;
    for (std::size_t i = 1; i < waypoints.size(); ++i) {
        if (t > waypoints[i].t) continue;
        const auto& a = waypoints[i - 1];
        const auto& b = waypoints[i];
        const double f = (t - a.t) / (b.t - a.t);
        return {a.p.x + f * (b.p.x - a.p.x), a.p.y + f * (b.p.y - a.p.y)};
    }
    return waypoints.back().p;
}

ControlSignal classify_and_signal(const WearableNode& node, const RadioEnvironment& env,
                                  RandomStream& rng) {
    if (!node.model) throw ConfigError("wearable has no model");
    if (model_ap_count(*node.model) != env.aps.size()) {
        throw ShapeError("model AP count does not match the environment");
    }
    const auto rssi = sample_vector(env, node.position, rng);
    const auto proba = model_proba(*node.model, rssi);
    const auto label = argmax_class(proba);
    if (node.abstain_threshold > 0 && proba.at(label) < node.abstain_threshold) {
        return {0};
    }
    if (label < 0 || label > kRoomCount) {
        throw InvalidCode("room id " + std::to_string(label) + " has no control code");
    }
    return {static_cast<std::uint8_t>(label)};
}

ControlSignal ModelLocalizer::locate(const RadioEnvironment& env, Point2D position,
                                     RandomStream& rng) const {
    WearableNode node;
    node.position = position;
    node.model = model_;
    node.abstain_threshold = abstain_threshold_;
    return classify_and_signal(node, env, rng);
}

ControlSignal OracleLocalizer::locate(const RadioEnvironment& env, Point2D position,
                                      RandomStream& rng) const {
    (void)rng;
    const auto room = room_of(env.rooms, position);
    if (!room) return {0};
    if (*room < 1 || *room > kRoomCount) {
        throw InvalidCode("room id " + std::to_string(*room) + " has no control code");
    }
    return {static_cast<std::uint8_t>(*room)};
}

namespace {

PeerKey derive_key(std::uint64_t seed) {
    RandomStream stream(derive_stream_seed(seed, "scenario.key"));
    PeerKey key{};
    for (int half = 0; half < 2; ++half) {
        const auto word = stream.bits();
        for (int i = 0; i < 8; ++i) {
            key[static_cast<std::size_t>(8 * half + i)] =
                static_cast<std::uint8_t>(word >> (8 * (7 - i)));
        }
    }
    return key;
}

} // namespace

ScenarioLog run_scenario(const RadioEnvironment& env, const Localizer& localizer,
                         const Trajectory& trajectory, const ScenarioConfig& cfg,
                         std::uint64_t seed) {
    env.validate();
    trajectory.validate();
    if (cfg.duration <= 0) throw ConfigError("scenario duration must be positive");
    if (cfg.sample_period <= 0) throw ConfigError("sample period must be positive");

    auto channel_cfg = cfg.channel;
    channel_cfg.seed = derive_stream_seed(seed, "scenario.channel");
    Channel channel(channel_cfg);

    const auto wearable_mac = MacAddress::parse("02:00:00:00:00:01");
    const auto control_mac = MacAddress::parse("02:00:00:00:00:02");
    const auto key = derive_key(seed);
    auto& wearable = channel.add_endpoint(wearable_mac, Endpoint::Role::Initiator, key);
    auto& control = channel.add_endpoint(control_mac, Endpoint::Role::Responder, key);

    RandomStream noise(derive_stream_seed(seed, "scenario.noise"));

    ScenarioLog log;
    ActuatorBank bank;
    std::map<std::uint64_t, std::size_t> tick_of_counter;
    std::size_t delivered = 0;
    double latency_sum = 0.0;

    const auto ticks = static_cast<std::size_t>(std::llround(cfg.duration / cfg.sample_period));

    for (std::size_t i = 0; i < ticks; ++i) {
        const double t = static_cast<double>(i) * cfg.sample_period;
        TickRecord rec;
        rec.t = t;
        const auto position = trajectory.at(t);
        rec.truth_room = room_of(env.rooms, position);

        const auto signal = localizer.locate(env, position, noise);
        rec.predicted_code = signal.code;
        rec.frame_outcome = "lost";

        const std::array<std::uint8_t, 1> payload{signal.code};

        if (cfg.reliable) {
            const auto result = send_reliable(channel, wearable_mac, control_mac, payload,
                                              cfg.retries, cfg.ack_timeout, t);
            if (result.receiver_accepted) {
                bank = apply_signal(bank, signal);
                rec.frame_outcome = "delivered";
                rec.actuation_latency = result.accept_time - t;
                latency_sum += rec.actuation_latency;
                ++delivered;
            }
        } else {
            const auto counter = wearable.next_counter();
            tick_of_counter[counter] = i;
            const auto wire = encode_frame(wearable_mac, control_mac, payload, wearable.key,
                                           counter);
            channel.send(wire, t);
            for (const auto& arrival : channel.advance(t + cfg.sample_period)) {
                if (arrival.dst != control_mac) continue;
                const auto frame = decode_frame(arrival.wire, control.key, control.replay);
                const auto it = tick_of_counter.find(frame.counter);
                // A frame can land in a later tick's window; attribute the
                // outcome to the tick that sent it.
                TickRecord* owner =
                    it == tick_of_counter.end() ? nullptr
                    : it->second == i           ? &rec
                                                : &log.ticks[it->second];
                if (!frame.ok()) {
                    if (owner) owner->frame_outcome = std::string("error:") + to_string(frame.status);
                    continue;
                }
                if (frame.payload.size() != 1 || frame.payload[0] > kRoomCount) {
                    if (owner) owner->frame_outcome = "error:invalid-code";
                    continue;
                }
                bank = apply_signal(bank, {frame.payload[0]});
                ++delivered;
                if (owner) {
                    owner->frame_outcome = "delivered";
                    owner->actuation_latency =
                        arrival.t - static_cast<double>(it->second) * cfg.sample_period;
                    latency_sum += owner->actuation_latency;
                }
            }
        }

        rec.bank = bank;
        log.ticks.push_back(rec);
    }

    auto& summary = log.summary;
    summary.ticks = log.ticks.size();
    summary.frames_sent = channel.frames_sent();
    summary.frames_lost = channel.frames_lost();
    summary.frames_delivered = delivered;
    summary.mean_actuation_latency = delivered ? latency_sum / static_cast<double>(delivered) : 0.0;

    std::size_t first_delivery = log.ticks.size();
    for (std::size_t i = 0; i < log.ticks.size(); ++i) {
        if (log.ticks[i].frame_outcome == "delivered") {
            first_delivery = i;
            break;
        }
    }
    for (std::size_t i = first_delivery; i < log.ticks.size(); ++i) {
        ++summary.post_warmup_ticks;
        const auto active = log.ticks[i].bank.active_room();
        if (active == log.ticks[i].truth_room) ++summary.matched_ticks;
    }
    summary.tracking_accuracy =
        summary.post_warmup_ticks
            ? static_cast<double>(summary.matched_ticks) /
                  static_cast<double>(summary.post_warmup_ticks)
            : 0.0;

    log.channel_events = channel.events();
    return log;
}

std::string scenario_to_jsonl(const ScenarioLog& log) {
    std::string out;
    for (const auto& rec : log.ticks) {
        nlohmann::ordered_json j;
        j["t"] = rec.t;
        if (rec.truth_room) {
            j["truth_room"] = *rec.truth_room;
        } else {
            j["truth_room"] = nullptr;
        }
        j["code"] = rec.predicted_code;
        j["outcome"] = rec.frame_outcome;
        j["lights"] = rec.bank.lights;
        j["fans"] = rec.bank.fans;
        j["latency"] = rec.actuation_latency;
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::string summary_to_json(const ScenarioSummary& summary) {
    nlohmann::ordered_json j;
    j["ticks"] = summary.ticks;
    j["post_warmup_ticks"] = summary.post_warmup_ticks;
    j["matched_ticks"] = summary.matched_ticks;
    j["tracking_accuracy"] = summary.tracking_accuracy;
    j["frames_sent"] = summary.frames_sent;
    j["frames_lost"] = summary.frames_lost;
    j["frames_delivered"] = summary.frames_delivered;
    j["mean_actuation_latency"] = summary.mean_actuation_latency;
    return j.dump(2);
}

} // namespace roomsense
