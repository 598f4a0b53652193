#include "roomsense/aes128.hpp"

#include <cstring>

namespace roomsense::aes {

namespace {

constexpr std::uint8_t xtime(std::uint8_t x) {
    return static_cast<std::uint8_t>((x << 1) ^ ((x >> 7) * 0x1B));
}

constexpr std::uint8_t gf_mul(std::uint8_t a, std::uint8_t b) {
    std::uint8_t acc = 0;
    for (int i = 0; i < 8; ++i) {
        if (b & 1) acc ^= a;
        a = xtime(a);
        b >>= 1;
    }
    return acc;
}

constexpr std::uint8_t gf_inv(std::uint8_t a) {
    if (a == 0) return 0;
    // a^254 in GF(2^8) by square-and-multiply.
    std::uint8_t result = 1;
    std::uint8_t base = a;
    int e = 254;
    while (e > 0) {
        if (e & 1) result = gf_mul(result, base);
        base = gf_mul(base, base);
        e >>= 1;
    }
    return result;
}

constexpr std::array<std::uint8_t, 256> make_sbox() {
    std::array<std::uint8_t, 256> box{};
    for (int i = 0; i < 256; ++i) {
        const std::uint8_t inv = gf_inv(static_cast<std::uint8_t>(i));
        std::uint8_t x = inv;
        std::uint8_t y = inv;
        for (int r = 0; r < 4; ++r) {
            y = static_cast<std::uint8_t>((y << 1) | (y >> 7));
            x ^= y;
        }
        box[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(x ^ 0x63);
    }
    return box;
}

constexpr auto kSbox = make_sbox();

static_assert(kSbox[0x00] == 0x63);
static_assert(kSbox[0x01] == 0x7C);
static_assert(kSbox[0x53] == 0xED);
static_assert(kSbox[0xFF] == 0x16);

constexpr std::array<std::uint8_t, 10> kRcon = {0x01, 0x02, 0x04, 0x08, 0x10,
                                                0x20, 0x40, 0x80, 0x1B, 0x36};

void expand_key(std::span<const std::uint8_t, 16> key, std::array<std::uint8_t, 176>& rk) {
    std::memcpy(rk.data(), key.data(), 16);
    for (int i = 4; i < 44; ++i) {
        std::uint8_t t[4];
        std::memcpy(t, rk.data() + 4 * (i - 1), 4);
        if (i % 4 == 0) {
            const std::uint8_t t0 = t[0];
            t[0] = static_cast<std::uint8_t>(kSbox[t[1]] ^ kRcon[static_cast<std::size_t>(i / 4 - 1)]);
            t[1] = kSbox[t[2]];
            t[2] = kSbox[t[3]];
            t[3] = kSbox[t0];
        }
        for (int b = 0; b < 4; ++b) {
            rk[static_cast<std::size_t>(4 * i + b)] =
                static_cast<std::uint8_t>(rk[static_cast<std::size_t>(4 * (i - 4) + b)] ^ t[b]);
        }
    }
}

void sub_bytes(std::uint8_t s[16]) {
    for (int i = 0; i < 16; ++i) s[i] = kSbox[s[i]];
}

// State is column-major: byte r + 4c of the block is row r, column c.
void shift_rows(std::uint8_t s[16]) {
    std::uint8_t t = s[1];
    s[1] = s[5];
    s[5] = s[9];
    s[9] = s[13];
    s[13] = t;

    std::swap(s[2], s[10]);
    std::swap(s[6], s[14]);

    t = s[15];
    s[15] = s[11];
    s[11] = s[7];
    s[7] = s[3];
    s[3] = t;
}

void mix_columns(std::uint8_t s[16]) {
    for (int c = 0; c < 4; ++c) {
        std::uint8_t* col = s + 4 * c;
        const std::uint8_t a0 = col[0];
        const std::uint8_t a1 = col[1];
        const std::uint8_t a2 = col[2];
        const std::uint8_t a3 = col[3];
        const std::uint8_t all = static_cast<std::uint8_t>(a0 ^ a1 ^ a2 ^ a3);
        col[0] = static_cast<std::uint8_t>(a0 ^ all ^ xtime(static_cast<std::uint8_t>(a0 ^ a1)));
        col[1] = static_cast<std::uint8_t>(a1 ^ all ^ xtime(static_cast<std::uint8_t>(a1 ^ a2)));
        col[2] = static_cast<std::uint8_t>(a2 ^ all ^ xtime(static_cast<std::uint8_t>(a2 ^ a3)));
        col[3] = static_cast<std::uint8_t>(a3 ^ all ^ xtime(static_cast<std::uint8_t>(a3 ^ a0)));
    }
}

void add_round_key(std::uint8_t s[16], const std::uint8_t* rk) {
    for (int i = 0; i < 16; ++i) s[i] ^= rk[i];
}

bool detect_aesni() {
#if defined(ROOMSENSE_HAVE_AESNI)
    return __builtin_cpu_supports("aes") != 0;
#else
    return false;
#endif
}

} // namespace

Backend active_backend() {
    static const Backend backend = detect_aesni() ? Backend::AesNi : Backend::Scalar;
    return backend;
}

const char* backend_name(Backend backend) {
    switch (backend) {
    case Backend::Scalar: return "scalar";
    case Backend::AesNi: return "aes-ni";
    }
    return "unknown";
}

Aes128::Aes128(std::span<const std::uint8_t, 16> key) { expand_key(key, rk_); }

void Aes128::encrypt_block_scalar(const std::uint8_t in[16], std::uint8_t out[16]) const {
    std::uint8_t s[16];
    std::memcpy(s, in, 16);
    add_round_key(s, rk_.data());
    for (int round = 1; round <= 9; ++round) {
        sub_bytes(s);
        shift_rows(s);
        mix_columns(s);
        add_round_key(s, rk_.data() + 16 * round);
    }
    sub_bytes(s);
    shift_rows(s);
    add_round_key(s, rk_.data() + 160);
    std::memcpy(out, s, 16);
}

void Aes128::encrypt_block(const std::uint8_t in[16], std::uint8_t out[16]) const {
#if defined(ROOMSENSE_HAVE_AESNI)
    if (active_backend() == Backend::AesNi) {
        encrypt_block_aesni(in, out);
        return;
    }
#endif
    encrypt_block_scalar(in, out);
}

} // namespace roomsense::aes
