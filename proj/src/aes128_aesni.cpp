// Compiled with -maes; callers must gate on active_backend().
#include "roomsense/aes128.hpp"

#if defined(ROOMSENSE_HAVE_AESNI)

#include <wmmintrin.h>

namespace roomsense::aes {

void Aes128::encrypt_block_aesni(const std::uint8_t in[16], std::uint8_t out[16]) const {
    const auto* rk = reinterpret_cast<const __m128i*>(rk_.data());
    __m128i block = _mm_loadu_si128(reinterpret_cast<const __m128i*>(in));
    block = _mm_xor_si128(block, _mm_loadu_si128(rk));
    for (int round = 1; round <= 9; ++round) {
        block = _mm_aesenc_si128(block, _mm_loadu_si128(rk + round));
    }
    block = _mm_aesenclast_si128(block, _mm_loadu_si128(rk + 10));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(out), block);
}

} // namespace roomsense::aes

#endif
