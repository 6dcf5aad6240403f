#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lembed/graphon.hpp"

namespace lembed {

enum class StepKind { Upper, Lower };

/// One restricted boundary map: Upper i is r_i^*, Lower i is l_i^*.
struct Step {
  StepKind kind = StepKind::Upper;
  int index = 1;

  /// "R2" / "L1".
  std::string name() const;
  static Step parse(std::string_view name);
  Step inverse() const { return {kind == StepKind::Upper ? StepKind::Lower : StepKind::Upper, index}; }
  int sign() const { return kind == StepKind::Upper ? 1 : -1; }

  friend bool operator==(const Step&, const Step&) = default;
  friend auto operator<=>(const Step&, const Step&) = default;
};

/// All steps in canonical order R1 < ... < R(N-1) < L1 < ... < L(N-1).
std::vector<Step> all_steps(std::size_t boundary_count);

/// Per-level count of upper steps minus lower steps.
using Signature = std::vector<std::int64_t>;

struct Witness {
  /// Outermost first: {R2, L1} means r_2^*(l_1^*(seed)).
  std::vector<Step> steps;
  Signature signature;

  static Witness empty(std::size_t boundary_count);
  /// The witness for `step` applied after this one.
  Witness then(const Step& step) const;
};

struct PointRecord {
  Witness witness;
  int depth = 0;
};

enum class Seed { Zero, One };

struct Coincidence {
  Seed set = Seed::Zero;
  Rational point;
  Witness canonical;
  Witness other;
};

enum class SetRelation { Unknown, DisjointSoFar, Identical };

struct ConstrainedSets {
  std::size_t boundary_count = 0;
  /// r_i^*(0), i = 1..N-1.
  std::vector<Rational> boundary_starts;
  std::map<Rational, PointRecord> p_points;
  std::map<Rational, PointRecord> q_points;
  std::vector<Coincidence> coincidences;
  SetRelation relation = SetRelation::Unknown;
  bool exception_flag = false;
  int max_depth = 0;
  int depth_reached = 0;
  bool complete = false;

  const std::map<Rational, PointRecord>& points(Seed s) const { return s == Seed::Zero ? p_points : q_points; }
};

/// r_i^*(x) or l_i^*(x) when x lies in the closed domain; empty otherwise.
std::optional<Rational> apply_step(const StepGraphon& g, const Step& s, const Rational& x);
/// Folds the witness over the seed, innermost step first.
std::optional<Rational> replay(const StepGraphon& g, const Witness& w, const Rational& seed);

/// Level-by-level closure of {0} and {1} under the restricted boundary maps.
/// Throws std::invalid_argument for an invalid graphon or negative depth.
ConstrainedSets generate(const StepGraphon& g, int max_depth);

/// Composition of the witness's steps as a single map, when its domain is
/// not degenerate.
std::optional<PiecewiseLinearMap> composed_map(const RestrictedMaps& maps, const Witness& w);

const char* to_string(SetRelation r);

}  // namespace lembed
