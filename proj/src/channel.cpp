#include "roomsense/channel.hpp"

#include <algorithm>
#include <array>

#include <nlohmann/json.hpp>

#include "roomsense/errors.hpp"

namespace roomsense {

Channel::Channel(const ChannelConfig& cfg)
    : cfg_(cfg), rng_(derive_stream_seed(cfg.seed, "channel.loss")) {
    if (cfg.bit_rate <= 0) throw ConfigError("bit rate must be positive");
    if (cfg.loss_prob < 0 || cfg.loss_prob > 1) throw ConfigError("loss probability outside [0,1]");
    if (cfg.latency < 0) throw ConfigError("latency must be nonnegative");
}

Endpoint& Channel::add_endpoint(const MacAddress& mac, Endpoint::Role role, const PeerKey& key) {
    if (mac == MacAddress::broadcast()) {
        throw ConfigError("the broadcast address cannot be an endpoint");
    }
    auto [it, inserted] = endpoints_.try_emplace(mac);
    if (!inserted) throw ConfigError("endpoint " + mac.str() + " already registered");
    it->second.mac = mac;
    it->second.role = role;
    it->second.key = key;
    return it->second;
}

Endpoint* Channel::endpoint(const MacAddress& mac) {
    const auto it = endpoints_.find(mac);
    return it == endpoints_.end() ? nullptr : &it->second;
}

DeliveryReport Channel::send(std::span<const std::uint8_t> wire, double now) {
    if (wire.size() < kFrameOverhead) {
        throw ShapeError("wire image shorter than a minimal frame");
    }
    MacAddress src;
    MacAddress dst;
    std::copy_n(wire.begin() + 4, 6, src.octets.begin());
    std::copy_n(wire.begin() + 10, 6, dst.octets.begin());

    std::vector<MacAddress> targets;
    if (dst == MacAddress::broadcast()) {
        for (const auto& [mac, ep] : endpoints_) {
            if (mac != src) targets.push_back(mac);
        }
    } else {
        if (endpoints_.find(dst) == endpoints_.end()) {
            throw UnknownDestination("no endpoint " + dst.str());
        }
        targets.push_back(dst);
    }

    ++frames_sent_;
    events_.push_back({now, "tx", src, dst, wire.size(), "sent"});

    DeliveryReport report;
    report.airtime = airtime(wire.size());
    const double arrival = now + cfg_.latency + report.airtime;

    for (const auto& target : targets) {
        const bool lost = rng_.uniform() < cfg_.loss_prob;
        if (lost) {
            ++frames_lost_;
            events_.push_back({now, "drop", src, target, wire.size(), "lost"});
            report.deliveries.push_back({target, false, 0.0});
        } else {
            pending_.push({arrival, seq_++, src, target,
                           std::vector<std::uint8_t>(wire.begin(), wire.end())});
            report.deliveries.push_back({target, true, arrival});
        }
    }
    return report;
}

std::vector<Arrival> Channel::advance(double until) {
    std::vector<Arrival> arrivals;
    while (!pending_.empty() && pending_.top().t <= until) {
        auto item = pending_.top();
        pending_.pop();
        events_.push_back({item.t, "rx", item.src, item.dst, item.wire.size(), "delivered"});
        arrivals.push_back({item.t, item.src, item.dst, std::move(item.wire)});
    }
    return arrivals;
}

ReliableResult send_reliable(Channel& channel, const MacAddress& src, const MacAddress& dst,
                             std::span<const std::uint8_t> payload, int retries,
                             double ack_timeout, double now) {
    auto* initiator = channel.endpoint(src);
    auto* responder = channel.endpoint(dst);
    if (!initiator) throw UnknownDestination("no endpoint " + src.str());
    if (!responder) throw UnknownDestination("no endpoint " + dst.str());
    if (retries < 0) throw ConfigError("retries must be nonnegative");
    if (ack_timeout <= 0) throw ConfigError("ack timeout must be positive");

    const auto counter = initiator->next_counter();
    const auto wire = encode_frame(src, dst, payload, initiator->key, counter);

    std::array<std::uint8_t, 6> echo;
    for (int i = 0; i < 6; ++i) echo[i] = static_cast<std::uint8_t>(counter >> (8 * (5 - i)));

    ReliableResult result;
    double t = now;

    for (int attempt = 0; attempt <= retries; ++attempt) {
        result.attempts = attempt + 1;
        channel.send(wire, t);
        const double deadline = t + ack_timeout;

        for (;;) {
            const auto batch = channel.advance(deadline);
            if (batch.empty()) break;
            for (const auto& arrival : batch) {
                if (arrival.dst == dst) {
                    auto frame = decode_frame(arrival.wire, responder->key, responder->replay);
                    if (frame.status == DecodeStatus::Ok && !result.receiver_accepted) {
                        result.receiver_accepted = true;
                        result.accept_time = arrival.t;
                    }
                    // A replay is this message's retransmission; its earlier
                    // ack was lost, so ack again.
                    if (frame.status == DecodeStatus::Ok ||
                        frame.status == DecodeStatus::ReplayRejected) {
                        std::array<std::uint8_t, 6> acked;
                        for (int i = 0; i < 6; ++i) {
                            acked[i] = static_cast<std::uint8_t>(frame.counter >> (8 * (5 - i)));
                        }
                        const auto ack = encode_frame(dst, src, acked, responder->key,
                                                      responder->next_counter());
                        channel.send(ack, arrival.t);
                    }
                } else if (arrival.dst == src) {
                    auto frame = decode_frame(arrival.wire, initiator->key, initiator->replay);
                    if (frame.ok() && frame.src == dst &&
                        std::equal(frame.payload.begin(), frame.payload.end(), echo.begin(),
                                   echo.end())) {
                        result.status = ReliableStatus::Delivered;
                        result.finish_time = arrival.t;
                        result.receiver_accepted = true;
                        return result;
                    }
                }
            }
        }
        t = deadline;
    }

    result.status = ReliableStatus::Failed;
    result.finish_time = t;
    return result;
}

std::string events_to_jsonl(std::span<const ChannelEvent> events) {
    std::string out;
    for (const auto& e : events) {
        nlohmann::ordered_json j;
        j["t"] = e.t;
        j["event"] = e.event;
        j["src"] = e.src.str();
        j["dst"] = e.dst.str();
        j["size"] = e.size;
        j["outcome"] = e.outcome;
        out += j.dump();
        out += '\n';
    }
    return out;
}

} // namespace roomsense
