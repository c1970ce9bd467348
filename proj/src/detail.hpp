#pragma once

#include <bit>
#include <cstdint>
#include <utility>

#if defined(__PCLMUL__) && defined(__SSE4_1__)
#include <wmmintrin.h>
#include <smmintrin.h>
#define HARMONICA_HAVE_CLMUL 1
#endif

namespace harmonica::detail {

// Deterministic 64-bit mixer (for reproducible pseudo-random probes).
inline uint64_t splitmix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// 64x64 -> 128 carryless multiply, returned as {high, low}.
inline std::pair<uint64_t, uint64_t> clmul64(uint64_t a, uint64_t b) {
#if defined(HARMONICA_HAVE_CLMUL)
    __m128i r = _mm_clmulepi64_si128(_mm_set_epi64x(0, (long long)a),
                                     _mm_set_epi64x(0, (long long)b), 0x00);
    return {uint64_t(_mm_extract_epi64(r, 1)), uint64_t(_mm_extract_epi64(r, 0))};
#else
    uint64_t lo = 0, hi = 0;
    while (b) {
        int j = std::countr_zero(b);
        b &= b - 1;
        lo ^= a << j;
        if (j) hi ^= a >> (64 - j);
    }
    return {hi, lo};
#endif
}

} // namespace harmonica::detail
