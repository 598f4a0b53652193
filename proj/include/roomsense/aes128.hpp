#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace roomsense::aes {

// AES-128, encrypt direction only (CCM never needs the inverse cipher).
// Two kernels share one key schedule: a portable scalar reference and an
// AES-NI variant picked at runtime. Both produce identical bytes; the test
// suite cross-checks them against each other and against published vectors.

enum class Backend { Scalar, AesNi };

// Kernel selected for this process (AES-NI when the CPU supports it).
Backend active_backend();
const char* backend_name(Backend backend);

class Aes128 {
public:
    explicit Aes128(std::span<const std::uint8_t, 16> key);

    void encrypt_block(const std::uint8_t in[16], std::uint8_t out[16]) const;

    // Reference kernel, always available.
    void encrypt_block_scalar(const std::uint8_t in[16], std::uint8_t out[16]) const;

#if defined(ROOMSENSE_HAVE_AESNI)
    void encrypt_block_aesni(const std::uint8_t in[16], std::uint8_t out[16]) const;
#endif

    // 11 round keys, 16 bytes each.
    const std::array<std::uint8_t, 176>& round_keys() const { return rk_; }

private:
    std::array<std::uint8_t, 176> rk_{};
};

} // namespace roomsense::aes
