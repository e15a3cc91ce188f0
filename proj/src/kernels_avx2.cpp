// Compiled with -mavx2 -mpopcnt; only reached through runtime dispatch.
#include "mdim/kernels.hpp"

#include <immintrin.h>

#include <bit>

namespace mdim::kernels::avx2 {

namespace {

// Per-byte popcount via nibble lookup, summed into four 64-bit lanes.
inline __m256i popcount_epi64(__m256i v) {
  const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                          0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  const __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo),
                                      _mm256_shuffle_epi8(lookup, hi));
  return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

}  // namespace

std::size_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  const std::size_t n = a.size();
  std::size_t i = 0;
  __m256i acc = _mm256_setzero_si256();
  for (; i + 4 <= n; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + i));
    acc = _mm256_add_epi64(acc, popcount_epi64(_mm256_and_si256(va, vb)));
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::size_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) total += static_cast<std::size_t>(_mm_popcnt_u64(a[i] & b[i]));
  return total;
}

void combine_keys(std::span<const std::uint32_t> cls, std::span<const std::uint8_t> row,
                  std::uint32_t radix, std::span<std::uint32_t> out) {
  const std::size_t n = cls.size();
  const __m256i vradix = _mm256_set1_epi32(static_cast<int>(radix));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i c = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(cls.data() + i));
    const __m128i r8 = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(row.data() + i));
    const __m256i r = _mm256_cvtepu8_epi32(r8);
    const __m256i k = _mm256_add_epi32(_mm256_mullo_epi32(c, vradix), r);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + i), k);
  }
  for (; i < n; ++i) out[i] = cls[i] * radix + row[i];
}

std::size_t count_equal(std::span<const std::uint8_t> row, std::uint8_t value) {
  const std::size_t n = row.size();
  const __m256i needle = _mm256_set1_epi8(static_cast<char>(value));
  std::size_t i = 0;
  std::size_t total = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row.data() + i));
    const auto mask = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(v, needle)));
    total += static_cast<std::size_t>(std::popcount(mask));
  }
  for (; i < n; ++i) total += (row[i] == value);
  return total;
}

}  // namespace mdim::kernels::avx2
