#include "lembed/verify.hpp"

#include <algorithm>

namespace lembed {

std::size_t pi_level(const Embedding& e, const Rational& x, const Rational& y) {
  const Rational gap = abs(e.pi(x) - e.pi(y));
  for (std::size_t i = 0; i < e.thresholds.size(); ++i)
    if (gap <= e.thresholds[i]) return i + 1;
  return e.thresholds.size() + 1;
}

namespace {

long floor_times(const Rational& r, long M) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), mpz_class(r.raw().get_num() * M).get_mpz_t(), r.raw().get_den_mpz_t());
  return q.get_si();
}

}  // namespace

VerificationReport verify_grid(const StepGraphon& g, const Embedding& e, long M, std::size_t mismatch_cap) {
  if (M < 2) throw std::invalid_argument("grid resolution must be at least 2");
  if (e.thresholds.size() != g.boundary_count())
    throw std::invalid_argument("embedding has " + std::to_string(e.thresholds.size()) + " thresholds, graphon needs " +
                                std::to_string(g.boundary_count()));
  const std::size_t m = g.boundary_count();
  std::vector<Rational> pis;
  pis.reserve(static_cast<std::size_t>(M));
  for (long j = 0; j < M; ++j) pis.push_back(e.pi(Rational(j, M)));

  VerificationReport rep;
  rep.grid_resolution = M;
  rep.pairs_checked = static_cast<std::uint64_t>(M) * static_cast<std::uint64_t>(M - 1) / 2;

  // For row j, the level of (j, k) is 1 + #{i : k > bound_i}; compare the two step functions.
  std::vector<long> wb(m), pb(m), cuts;
  for (long j = 0; j < M; ++j) {
    const Rational x(j, M);
    for (std::size_t i = 0; i < m; ++i) {
      wb[i] = std::min(floor_times(g.upper_at(i + 1, x), M), M - 1);
      const Rational reach = pis[static_cast<std::size_t>(j)] + e.thresholds[i];
      pb[i] = static_cast<long>(std::upper_bound(pis.begin(), pis.end(), reach) - pis.begin()) - 1;
    }
    cuts.assign({j + 1, M});
    for (std::size_t i = 0; i < m; ++i) {
      if (wb[i] + 1 > j + 1 && wb[i] + 1 < M) cuts.push_back(wb[i] + 1);
      if (pb[i] + 1 > j + 1 && pb[i] + 1 < M) cuts.push_back(pb[i] + 1);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
      const long k0 = cuts[s];
      const long k1 = cuts[s + 1];
      std::size_t wl = 1, pl = 1;
      for (std::size_t i = 0; i < m; ++i) {
        wl += k0 > wb[i];
        pl += k0 > pb[i];
      }
      if (wl == pl) continue;
      rep.mismatch_count += static_cast<std::uint64_t>(k1 - k0);
      for (long k = k0; k < k1 && rep.mismatches.size() < mismatch_cap; ++k)
        rep.mismatches.push_back({x, Rational(k, M), wl, pl});
    }
  }
  rep.mismatch_rate = Rational(static_cast<long>(rep.mismatch_count), static_cast<long>(rep.pairs_checked));
  return rep;
}

}  // namespace lembed
