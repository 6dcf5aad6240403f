#pragma once

#include <cstddef>
#include <vector>

#include "lembed/embedding.hpp"
#include "lembed/graphon.hpp"

namespace lembed {

struct Mismatch {
  Rational x;
  Rational y;
  std::size_t w_level = 0;
  std::size_t pi_level = 0;
};

struct VerificationReport {
  long grid_resolution = 0;
  std::uint64_t pairs_checked = 0;
  std::uint64_t mismatch_count = 0;
  /// First mismatches in (x, y) order, at most the cap.
  std::vector<Mismatch> mismatches;
  Rational mismatch_rate;
};

/// Least i with |dpi| <= d_i, else N.
std::size_t pi_level(const Embedding& e, const Rational& x, const Rational& y);

/// Exact comparison over all pairs (j/M, k/M), j < k.
VerificationReport verify_grid(const StepGraphon& g, const Embedding& e, long M, std::size_t mismatch_cap = 20);

}  // namespace lembed
