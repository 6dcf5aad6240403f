#pragma once

#include <random>
#include <string>
#include <vector>

#include "lembed/graphon.hpp"

namespace lembed::testing {

inline std::string fixture(const std::string& name) { return std::string(LEMBED_FIXTURE_DIR) + "/" + name; }

inline StepGraphon example3() { return load_spec(fixture("example3.graphon")); }
inline StepGraphon example1() { return load_spec(fixture("example1.graphon")); }

inline Rational q(const char* s) { return Rational::parse(s); }

inline std::vector<Rational> qs(std::initializer_list<const char*> xs) {
  std::vector<Rational> out;
  for (auto* s : xs) out.push_back(Rational::parse(s));
  return out;
}

/// Uniform rational k/den with lo <= k <= hi.
inline Rational random_fraction(std::mt19937_64& rng, long lo, long hi, long den) {
  return Rational(std::uniform_int_distribution<long>(lo, hi)(rng), den);
}

/// Random two-valued graphon whose boundary keeps distance >= sep from the
/// diagonal; breakpoints on a 1/200 grid.
inline StepGraphon random_two_valued(std::mt19937_64& rng, const Rational& sep) {
  for (;;) {
    const int interior = std::uniform_int_distribution<int>(0, 3)(rng);
    const Rational c = random_fraction(rng, 40, 196, 200);
    std::vector<Rational> xs{Rational(0)};
    for (int k = 0; k < interior; ++k) xs.push_back(random_fraction(rng, 1, 195, 200) * c);
    xs.push_back(c);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<Rational> ys;
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) ys.push_back(random_fraction(rng, 1, 199, 200));
    std::sort(ys.begin(), ys.end());
    ys.push_back(Rational(1));
    std::vector<Breakpoint> bps;
    bool ok = true;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      if (k > 0 && !(ys[k - 1] < ys[k])) ok = false;
      if (ys[k] - xs[k] < sep) ok = false;
      bps.push_back({xs[k], ys[k]});
    }
    if (!ok) continue;
    StepGraphon g({Rational(1), Rational(0)}, {PiecewiseLinearMap(bps)});
    auto v = validate(g);
    if (v.ok && v.epsilon >= sep) return g;
  }
}

}  // namespace lembed::testing
