#pragma once

#include <cstdint>
#include <map>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "roomsense/link.hpp"
#include "roomsense/mac.hpp"
#include "roomsense/rng.hpp"

namespace roomsense {

struct ChannelConfig {
    double bit_rate = 1'000'000.0; // bits per second
    double loss_prob = 0.0;        // per destination, independent
    double latency = 0.0;          // seconds
    std::uint64_t seed = 0;
};

struct ChannelEvent {
    double t = 0.0;
    std::string event; // "tx", "rx", "drop"
    MacAddress src;
    MacAddress dst;
    std::size_t size = 0;
    std::string outcome; // "sent", "delivered", "lost"
};

struct Delivery {
    MacAddress dst;
    bool delivered = false;
    double time = 0.0; // scheduled arrival when delivered
};

struct DeliveryReport {
    double airtime = 0.0;
    std::vector<Delivery> deliveries;
};

struct Arrival {
    double t = 0.0;
    MacAddress src;
    MacAddress dst;
    std::vector<std::uint8_t> wire;
};

// Single-threaded discrete-event byte transport over virtual time. Frames are
// opaque datagrams; only the clear-text addressing fields are inspected for
// routing. Everything (loss draws, timestamps, log order) is a pure function
// of (seed, submission sequence).
class Channel {
public:
    explicit Channel(const ChannelConfig& cfg);

    Endpoint& add_endpoint(const MacAddress& mac, Endpoint::Role role, const PeerKey& key);
    Endpoint* endpoint(const MacAddress& mac);
    std::size_t endpoint_count() const { return endpoints_.size(); }

    // Schedules delivery at now + latency + airtime per destination (all
    // registered endpoints except the sender when dst is broadcast). Throws
    // UnknownDestination for an unregistered unicast dst.
    DeliveryReport send(std::span<const std::uint8_t> wire, double now);

    // Pops every pending arrival with t <= until, in schedule order.
    std::vector<Arrival> advance(double until);

    double airtime(std::size_t wire_octets) const { return wire_octets * 8.0 / cfg_.bit_rate; }

    const ChannelConfig& config() const { return cfg_; }
    const std::vector<ChannelEvent>& events() const { return events_; }
    std::size_t frames_sent() const { return frames_sent_; }
    std::size_t frames_lost() const { return frames_lost_; }

private:
    struct Pending {
        double t = 0.0;
        std::uint64_t seq = 0;
        MacAddress src;
        MacAddress dst;
        std::vector<std::uint8_t> wire;
    };
    struct Later {
        bool operator()(const Pending& a, const Pending& b) const {
            if (a.t != b.t) return a.t > b.t;
            return a.seq > b.seq;
        }
    };

    ChannelConfig cfg_;
    RandomStream rng_;
    std::map<MacAddress, Endpoint> endpoints_;
    std::priority_queue<Pending, std::vector<Pending>, Later> pending_;
    std::uint64_t seq_ = 0;
    std::size_t frames_sent_ = 0;
    std::size_t frames_lost_ = 0;
    std::vector<ChannelEvent> events_;
};

enum class ReliableStatus { Delivered, Failed };

struct ReliableResult {
    ReliableStatus status = ReliableStatus::Failed;
    int attempts = 0;
    double finish_time = 0.0;
    // The data frame reached the responder at least once (acked or not).
    bool receiver_accepted = false;
    double accept_time = 0.0; // first responder acceptance, when accepted
};

// Stop-and-wait: unicast the payload, await an ack whose 6-octet payload
// echoes the data counter, retransmit on timeout up to `retries` times.
// Retransmissions reuse the same counter so the responder accepts each
// logical message at most once; authenticated replays are re-acked to absorb
// lost acks. Both endpoints must be registered on the channel.
ReliableResult send_reliable(Channel& channel, const MacAddress& src, const MacAddress& dst,
                             std::span<const std::uint8_t> payload, int retries,
                             double ack_timeout, double now);

// Event log as JSON lines: {"t","event","src","dst","size","outcome"}.
std::string events_to_jsonl(std::span<const ChannelEvent> events);

} // namespace roomsense
