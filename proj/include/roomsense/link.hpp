#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "roomsense/mac.hpp"

namespace roomsense {

// Connectionless authenticated frame, one vendor action frame per datagram.
//
// Wire layout (all multi-octet integers big-endian):
//   offset  size  field
//        0     2  magic 0x45 0x4E
//        2     1  version 0x01
//        3     1  ftype: 0 unicast, 1 broadcast (1 iff dst is broadcast)
//        4     6  src MAC
//       10     6  dst MAC
//       16     6  send counter (low 48 bits; counters above 2^48-1 are
//                 rejected at encode time)
//       22     1  payload length, 0..250
//       23     L  ciphertext
//     23+L    16  tag
//
// Total wire size = 39 + L. The 23-octet header is bound as associated data;
// the AEAD nonce is 4 zero octets followed by the 8-octet big-endian counter.

inline constexpr std::uint8_t kMagic0 = 0x45;
inline constexpr std::uint8_t kMagic1 = 0x4E;
inline constexpr std::uint8_t kVersion = 0x01;
inline constexpr std::size_t kHeaderLen = 23;
inline constexpr std::size_t kTagLen = 16;
inline constexpr std::size_t kFrameOverhead = kHeaderLen + kTagLen; // 39
inline constexpr std::size_t kMaxPayload = 250;
inline constexpr std::uint64_t kMaxCounter = (1ull << 48) - 1;

using PeerKey = std::array<std::uint8_t, 16>;

// Throws PayloadTooLarge above 250 octets, CounterOverflow above 2^48-1.
std::vector<std::uint8_t> encode_frame(const MacAddress& src, const MacAddress& dst,
                                       std::span<const std::uint8_t> payload, const PeerKey& key,
                                       std::uint64_t counter);

enum class DecodeStatus {
    Ok,
    BadMagic,
    BadVersion,
    Truncated,
    AuthFailure,
    ReplayRejected,
};

const char* to_string(DecodeStatus status);

// Highest accepted counter per source.
struct ReplayState {
    std::map<MacAddress, std::uint64_t> last_seen;
};

struct DecodedFrame {
    DecodeStatus status = DecodeStatus::Truncated;
    MacAddress src;
    MacAddress dst;
    std::uint64_t counter = 0;
    std::vector<std::uint8_t> payload;

    bool ok() const { return status == DecodeStatus::Ok; }
};

// Authenticates before inspecting header constants, so any tampering anywhere
// in the wire image surfaces as AuthFailure; magic/version checks reject only
// authentic frames from a different protocol. The replay rule (counter must
// exceed last_seen[src]) is enforced last, and last_seen is updated only on
// full acceptance.
DecodedFrame decode_frame(std::span<const std::uint8_t> wire, const PeerKey& key,
                          ReplayState& replay);

struct Endpoint {
    enum class Role { Initiator, Responder };

    MacAddress mac;
    Role role = Role::Initiator;
    PeerKey key{};
    std::uint64_t send_counter = 0; // last used; strictly increases
    ReplayState replay;

    std::uint64_t next_counter() { return ++send_counter; }
};

} // namespace roomsense
