#include "roomsense/ccm.hpp"

#include <cstring>

#include "roomsense/errors.hpp"

namespace roomsense::aes {

namespace {

constexpr std::size_t kL = 3; // octets of the message length field

struct Mac {
    const Aes128& cipher;
    std::uint8_t block[16]{};

    void absorb(const std::uint8_t chunk[16]) {
        for (int i = 0; i < 16; ++i) block[i] ^= chunk[i];
        cipher.encrypt_block(block, block);
    }
};

void mac_padded(Mac& mac, std::span<const std::uint8_t> data) {
    std::uint8_t chunk[16];
    while (!data.empty()) {
        const std::size_t take = std::min<std::size_t>(16, data.size());
        std::memset(chunk, 0, sizeof chunk);
        std::memcpy(chunk, data.data(), take);
        mac.absorb(chunk);
        data = data.subspan(take);
    }
}

void cbc_mac(const Aes128& cipher, std::span<const std::uint8_t, kCcmNonceLen> nonce,
             std::span<const std::uint8_t> aad, std::span<const std::uint8_t> plaintext,
             std::uint8_t out[16]) {
    if (plaintext.size() >= (1ull << (8 * kL))) {
        throw PayloadTooLarge("plaintext exceeds the CCM length field");
    }
    if (aad.size() >= 0xFF00) {
        throw PayloadTooLarge("associated data exceeds the two-octet encoding");
    }

    Mac mac{cipher};

    std::uint8_t b0[16];
    b0[0] = static_cast<std::uint8_t>((aad.empty() ? 0x00 : 0x40) |
                                      (((kCcmTagLen - 2) / 2) << 3) | (kL - 1));
    std::memcpy(b0 + 1, nonce.data(), kCcmNonceLen);
    const auto len = plaintext.size();
    b0[13] = static_cast<std::uint8_t>(len >> 16);
    b0[14] = static_cast<std::uint8_t>(len >> 8);
    b0[15] = static_cast<std::uint8_t>(len);
    mac.absorb(b0);

    if (!aad.empty()) {
        std::uint8_t first[16]{};
        first[0] = static_cast<std::uint8_t>(aad.size() >> 8);
        first[1] = static_cast<std::uint8_t>(aad.size());
        const std::size_t head = std::min<std::size_t>(14, aad.size());
        std::memcpy(first + 2, aad.data(), head);
        mac.absorb(first);
        mac_padded(mac, aad.subspan(head));
    }
    mac_padded(mac, plaintext);

    std::memcpy(out, mac.block, 16);
}

void ctr_block(const Aes128& cipher, std::span<const std::uint8_t, kCcmNonceLen> nonce,
               std::uint32_t counter, std::uint8_t out[16]) {
    std::uint8_t a[16];
    a[0] = kL - 1;
    std::memcpy(a + 1, nonce.data(), kCcmNonceLen);
    a[13] = static_cast<std::uint8_t>(counter >> 16);
    a[14] = static_cast<std::uint8_t>(counter >> 8);
    a[15] = static_cast<std::uint8_t>(counter);
    cipher.encrypt_block(a, out);
}

void ctr_xor(const Aes128& cipher, std::span<const std::uint8_t, kCcmNonceLen> nonce,
             std::span<const std::uint8_t> in, std::uint8_t* out) {
    std::uint8_t keystream[16];
    std::uint32_t counter = 1;
    std::size_t done = 0;
    while (done < in.size()) {
        ctr_block(cipher, nonce, counter++, keystream);
        const std::size_t take = std::min<std::size_t>(16, in.size() - done);
        for (std::size_t i = 0; i < take; ++i) out[done + i] = in[done + i] ^ keystream[i];
        done += take;
    }
}

} // namespace

std::vector<std::uint8_t> ccm_seal(const Aes128& cipher,
                                   std::span<const std::uint8_t, kCcmNonceLen> nonce,
                                   std::span<const std::uint8_t> aad,
                                   std::span<const std::uint8_t> plaintext) {
    std::uint8_t mac[16];
    cbc_mac(cipher, nonce, aad, plaintext, mac);

    std::uint8_t s0[16];
    ctr_block(cipher, nonce, 0, s0);

    std::vector<std::uint8_t> out(plaintext.size() + kCcmTagLen);
    ctr_xor(cipher, nonce, plaintext, out.data());
    for (std::size_t i = 0; i < kCcmTagLen; ++i) {
        out[plaintext.size() + i] = static_cast<std::uint8_t>(mac[i] ^ s0[i]);
    }
    return out;
}

std::optional<std::vector<std::uint8_t>> ccm_open(const Aes128& cipher,
                                                  std::span<const std::uint8_t, kCcmNonceLen> nonce,
                                                  std::span<const std::uint8_t> aad,
                                                  std::span<const std::uint8_t> sealed) {
    if (sealed.size() < kCcmTagLen) return std::nullopt;
    const auto ct = sealed.first(sealed.size() - kCcmTagLen);
    const auto tag = sealed.last(kCcmTagLen);

    std::vector<std::uint8_t> plaintext(ct.size());
    ctr_xor(cipher, nonce, ct, plaintext.data());

    std::uint8_t mac[16];
    cbc_mac(cipher, nonce, aad, plaintext, mac);
    std::uint8_t s0[16];
    ctr_block(cipher, nonce, 0, s0);

    std::uint8_t diff = 0;
    for (std::size_t i = 0; i < kCcmTagLen; ++i) {
        diff |= static_cast<std::uint8_t>(mac[i] ^ s0[i] ^ tag[i]);
    }
    if (diff != 0) return std::nullopt;
    return plaintext;
}

} // namespace roomsense::aes
