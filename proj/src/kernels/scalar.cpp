#include <bit>
#include <cmath>

#include "lembed/kernels/kernels.hpp"
#include "lembed/kernels/philox.hpp"

namespace lembed::kernels {
namespace {

void uniforms_scalar(std::uint64_t seed, std::uint32_t stream, std::uint64_t first, std::size_t count, double* out) {
  const PhiloxKey key = philox_key(seed);
  for (std::size_t t = 0; t < count; ++t) out[t] = philox_uniform(philox4x32_10(philox_counter(first + t, stream), key));
}

void band_levels_scalar(const double* v, std::size_t count, const double* lo, const double* hi, std::size_t bands,
                        double tol, std::uint8_t* level, std::uint8_t* ambiguous) {
  for (std::size_t j = 0; j < count; ++j) {
    std::uint8_t lv = 1;
    std::uint8_t amb = 0;
    for (std::size_t k = 0; k < bands; ++k) {
      lv += (v[j] < lo[k] || v[j] > hi[k]) ? 1 : 0;
      amb |= (std::fabs(v[j] - lo[k]) <= tol || std::fabs(v[j] - hi[k]) <= tol) ? 1 : 0;
    }
    level[j] = lv;
    ambiguous[j] = amb;
  }
}

std::uint64_t and_popcount_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  std::uint64_t total = 0;
  for (std::size_t w = 0; w < words; ++w) total += static_cast<std::uint64_t>(std::popcount(a[w] & b[w]));
  return total;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", uniforms_scalar, band_levels_scalar, and_popcount_scalar};
  return table;
}

}  // namespace lembed::kernels
