#include "roomsense/link.hpp"

#include <algorithm>

#include "roomsense/ccm.hpp"
#include "roomsense/errors.hpp"

namespace roomsense {

namespace {

std::array<std::uint8_t, aes::kCcmNonceLen> make_nonce(std::uint64_t counter) {
    std::array<std::uint8_t, aes::kCcmNonceLen> nonce{};
    for (int i = 0; i < 8; ++i) {
        nonce[4 + i] = static_cast<std::uint8_t>(counter >> (8 * (7 - i)));
    }
    return nonce;
}

} // namespace

std::vector<std::uint8_t> encode_frame(const MacAddress& src, const MacAddress& dst,
                                       std::span<const std::uint8_t> payload, const PeerKey& key,
                                       std::uint64_t counter) {
    if (payload.size() > kMaxPayload) {
        throw PayloadTooLarge("payload of " + std::to_string(payload.size()) +
                              " octets exceeds the 250-octet limit");
    }
    if (counter > kMaxCounter) {
        throw CounterOverflow("send counter exceeds 48 bits");
    }

    std::vector<std::uint8_t> wire(kFrameOverhead + payload.size());
    wire[0] = kMagic0;
    wire[1] = kMagic1;
    wire[2] = kVersion;
    wire[3] = dst == MacAddress::broadcast() ? 1 : 0;
    std::copy(src.octets.begin(), src.octets.end(), wire.begin() + 4);
    std::copy(dst.octets.begin(), dst.octets.end(), wire.begin() + 10);
    for (int i = 0; i < 6; ++i) {
        wire[16 + static_cast<std::size_t>(i)] =
            static_cast<std::uint8_t>(counter >> (8 * (5 - i)));
    }
    wire[22] = static_cast<std::uint8_t>(payload.size());

    const aes::Aes128 cipher{std::span<const std::uint8_t, 16>{key}};
    const auto nonce = make_nonce(counter);
    const auto sealed = aes::ccm_seal(cipher, nonce, std::span(wire).first(kHeaderLen), payload);
    std::copy(sealed.begin(), sealed.end(), wire.begin() + kHeaderLen);
    return wire;
}

const char* to_string(DecodeStatus status) {
    switch (status) {
    case DecodeStatus::Ok: return "ok";
    case DecodeStatus::BadMagic: return "bad-magic";
    case DecodeStatus::BadVersion: return "bad-version";
    case DecodeStatus::Truncated: return "truncated";
    case DecodeStatus::AuthFailure: return "auth-failure";
    case DecodeStatus::ReplayRejected: return "replay-rejected";
    }
    return "unknown";
}

DecodedFrame decode_frame(std::span<const std::uint8_t> wire, const PeerKey& key,
                          ReplayState& replay) {
    DecodedFrame frame;
    if (wire.size() < kFrameOverhead || wire.size() > kFrameOverhead + kMaxPayload) {
        frame.status = DecodeStatus::Truncated;
        return frame;
    }

    std::uint64_t counter = 0;
    for (int i = 0; i < 6; ++i) counter = (counter << 8) | wire[16 + static_cast<std::size_t>(i)];
    frame.counter = counter; // clear-text; reported even on rejected frames

    const aes::Aes128 cipher{std::span<const std::uint8_t, 16>{key}};
    const auto nonce = make_nonce(counter);
    auto payload = aes::ccm_open(cipher, nonce, wire.first(kHeaderLen), wire.subspan(kHeaderLen));
    if (!payload) {
        frame.status = DecodeStatus::AuthFailure;
        return frame;
    }

    if (wire[0] != kMagic0 || wire[1] != kMagic1) {
        frame.status = DecodeStatus::BadMagic;
        return frame;
    }
    if (wire[2] != kVersion) {
        frame.status = DecodeStatus::BadVersion;
        return frame;
    }
    if (wire[22] != wire.size() - kFrameOverhead) {
        // Authenticated, so this is an internal inconsistency, not tampering.
        frame.status = DecodeStatus::Truncated;
        return frame;
    }

    std::copy_n(wire.begin() + 4, 6, frame.src.octets.begin());
    std::copy_n(wire.begin() + 10, 6, frame.dst.octets.begin());

    const auto it = replay.last_seen.find(frame.src);
    if (it != replay.last_seen.end() && counter <= it->second) {
        frame.status = DecodeStatus::ReplayRejected;
        return frame;
    }

    replay.last_seen[frame.src] = counter;
    frame.payload = std::move(*payload);
    frame.status = DecodeStatus::Ok;
    return frame;
}

} // namespace roomsense
