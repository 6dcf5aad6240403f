#include <immintrin.h>

#include <bit>
#include <cmath>

#include "lembed/kernels/kernels.hpp"
#include "lembed/kernels/philox.hpp"

namespace lembed::kernels {
namespace {

// Each 64-bit lane holds one 32-bit Philox word; four counters per pass.
inline void philox_x4(__m256i& c0, __m256i& c1, __m256i& c2, __m256i& c3, PhiloxKey key) {
  const __m256i m0 = _mm256_set1_epi64x(kPhiloxM0);
  const __m256i m1 = _mm256_set1_epi64x(kPhiloxM1);
  const __m256i low = _mm256_set1_epi64x(0xFFFFFFFF);
  for (int round = 0; round < 10; ++round) {
    const __m256i p0 = _mm256_mul_epu32(c0, m0);
    const __m256i p1 = _mm256_mul_epu32(c2, m1);
    const __m256i k0 = _mm256_set1_epi64x(key[0]);
    const __m256i k1 = _mm256_set1_epi64x(key[1]);
    const __m256i n0 = _mm256_xor_si256(_mm256_xor_si256(_mm256_srli_epi64(p1, 32), c1), k0);
    const __m256i n1 = _mm256_and_si256(p1, low);
    const __m256i n2 = _mm256_xor_si256(_mm256_xor_si256(_mm256_srli_epi64(p0, 32), c3), k1);
    const __m256i n3 = _mm256_and_si256(p0, low);
    c0 = n0;
    c1 = n1;
    c2 = n2;
    c3 = n3;
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
}

// Exact conversion of values below 2^32 via the 2^52 exponent trick.
inline __m256d u32_to_pd(__m256i x) {
  const __m256i magic_bits = _mm256_set1_epi64x(0x4330000000000000LL);
  const __m256d magic = _mm256_set1_pd(0x1.0p52);
  return _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(x, magic_bits)), magic);
}

void uniforms_avx2(std::uint64_t seed, std::uint32_t stream, std::uint64_t first, std::size_t count, double* out) {
  const PhiloxKey key = philox_key(seed);
  const __m256i low = _mm256_set1_epi64x(0xFFFFFFFF);
  const __m256d two32 = _mm256_set1_pd(0x1.0p32);
  const __m256d scale = _mm256_set1_pd(0x1.0p-53);
  std::size_t t = 0;
  for (; t + 4 <= count; t += 4) {
    const std::uint64_t i = first + t;
    __m256i idx = _mm256_setr_epi64x(static_cast<long long>(i), static_cast<long long>(i + 1),
                                     static_cast<long long>(i + 2), static_cast<long long>(i + 3));
    __m256i c0 = _mm256_and_si256(idx, low);
    __m256i c1 = _mm256_srli_epi64(idx, 32);
    __m256i c2 = _mm256_set1_epi64x(stream);
    __m256i c3 = _mm256_setzero_si256();
    philox_x4(c0, c1, c2, c3, key);
    // bits = (c0 << 32 | c1) >> 11 = (c0 << 21) | (c1 >> 11), split at 2^32.
    const __m256i bits = _mm256_or_si256(_mm256_slli_epi64(c0, 21), _mm256_srli_epi64(c1, 11));
    const __m256d hi = u32_to_pd(_mm256_srli_epi64(bits, 32));
    const __m256d lo = u32_to_pd(_mm256_and_si256(bits, low));
    _mm256_storeu_pd(out + t, _mm256_mul_pd(_mm256_add_pd(_mm256_mul_pd(hi, two32), lo), scale));
  }
  for (; t < count; ++t) out[t] = philox_uniform(philox4x32_10(philox_counter(first + t, stream), key));
}

void band_levels_avx2(const double* v, std::size_t count, const double* lo, const double* hi, std::size_t bands,
                      double tol, std::uint8_t* level, std::uint8_t* ambiguous) {
  const __m256d vtol = _mm256_set1_pd(tol);
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t j = 0;
  for (; j + 4 <= count; j += 4) {
    const __m256d x = _mm256_loadu_pd(v + j);
    __m256i lv = _mm256_set1_epi64x(1);
    __m256d amb = _mm256_setzero_pd();
    for (std::size_t k = 0; k < bands; ++k) {
      const __m256d l = _mm256_set1_pd(lo[k]);
      const __m256d h = _mm256_set1_pd(hi[k]);
      const __m256d out_band = _mm256_or_pd(_mm256_cmp_pd(x, l, _CMP_LT_OQ), _mm256_cmp_pd(x, h, _CMP_GT_OQ));
      lv = _mm256_sub_epi64(lv, _mm256_castpd_si256(out_band));
      const __m256d dl = _mm256_andnot_pd(sign, _mm256_sub_pd(x, l));
      const __m256d dh = _mm256_andnot_pd(sign, _mm256_sub_pd(x, h));
      amb = _mm256_or_pd(amb, _mm256_or_pd(_mm256_cmp_pd(dl, vtol, _CMP_LE_OQ), _mm256_cmp_pd(dh, vtol, _CMP_LE_OQ)));
    }
    alignas(32) std::int64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), lv);
    const int mask = _mm256_movemask_pd(amb);
    for (int q = 0; q < 4; ++q) {
      level[j + q] = static_cast<std::uint8_t>(lanes[q]);
      ambiguous[j + q] = static_cast<std::uint8_t>((mask >> q) & 1);
    }
  }
  for (; j < count; ++j) {
    std::uint8_t lv = 1;
    std::uint8_t a = 0;
    for (std::size_t k = 0; k < bands; ++k) {
      lv += (v[j] < lo[k] || v[j] > hi[k]) ? 1 : 0;
      a |= (std::fabs(v[j] - lo[k]) <= tol || std::fabs(v[j] - hi[k]) <= tol) ? 1 : 0;
    }
    level[j] = lv;
    ambiguous[j] = a;
  }
}

// Nibble-table popcount (Mula).
std::uint64_t and_popcount_avx2(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  const __m256i table = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4, 0, 1, 1, 2, 1, 2, 2, 3, 1, 2,
                                         2, 3, 2, 3, 3, 4);
  const __m256i nibble = _mm256_set1_epi8(0x0F);
  __m256i acc = _mm256_setzero_si256();
  std::size_t w = 0;
  for (; w + 4 <= words; w += 4) {
    const __m256i x = _mm256_and_si256(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + w)),
                                       _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + w)));
    const __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(table, _mm256_and_si256(x, nibble)),
                                        _mm256_shuffle_epi8(table, _mm256_and_si256(_mm256_srli_epi16(x, 4), nibble)));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(cnt, _mm256_setzero_si256()));
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::uint64_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; w < words; ++w) total += static_cast<std::uint64_t>(std::popcount(a[w] & b[w]));
  return total;
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{"avx2", uniforms_avx2, band_levels_avx2, and_popcount_avx2};
  return table;
}

}  // namespace lembed::kernels
