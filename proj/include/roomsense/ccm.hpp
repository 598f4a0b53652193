#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "roomsense/aes128.hpp"

namespace roomsense::aes {

// AES-CCM (CTR + CBC-MAC) with a 12-octet nonce (L = 3) and 16-octet tag.

inline constexpr std::size_t kCcmNonceLen = 12;
inline constexpr std::size_t kCcmTagLen = 16;

// Returns ciphertext || tag.
std::vector<std::uint8_t> ccm_seal(const Aes128& cipher,
                                   std::span<const std::uint8_t, kCcmNonceLen> nonce,
                                   std::span<const std::uint8_t> aad,
                                   std::span<const std::uint8_t> plaintext);

// Verifies and decrypts ciphertext || tag; nullopt on authentication failure.
std::optional<std::vector<std::uint8_t>> ccm_open(const Aes128& cipher,
                                                  std::span<const std::uint8_t, kCcmNonceLen> nonce,
                                                  std::span<const std::uint8_t> aad,
                                                  std::span<const std::uint8_t> sealed);

} // namespace roomsense::aes
