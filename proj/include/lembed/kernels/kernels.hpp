#pragma once

#include <cstddef>
#include <cstdint>

namespace lembed::kernels {

inline constexpr std::uint32_t kLabelStream = 0;
inline constexpr std::uint32_t kPairStream = 1;

struct KernelTable {
  const char* name;
  /// out[t] = uniform for draw first + t of `stream`.
  void (*uniforms)(std::uint64_t seed, std::uint32_t stream, std::uint64_t first, std::size_t count, double* out);
  /// level[j] = 1 + #{k : v[j] < lo[k] or v[j] > hi[k]}; ambiguous[j] = 1 when v[j]
  /// is within tol of some lo[k] or hi[k].
  void (*band_levels)(const double* v, std::size_t count, const double* lo, const double* hi, std::size_t bands,
                      double tol, std::uint8_t* level, std::uint8_t* ambiguous);
  /// popcount(a & b) over `words` words.
  std::uint64_t (*and_popcount)(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
};

const KernelTable& scalar_kernels();
/// nullptr when not compiled in or not supported by this CPU.
const KernelTable* avx2_kernels();
/// AVX2 when available unless LEMBED_KERNELS=scalar is set.
const KernelTable& active_kernels();

}  // namespace lembed::kernels
