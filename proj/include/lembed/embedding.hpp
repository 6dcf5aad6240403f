#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lembed/constrained_points.hpp"
#include "lembed/feasibility.hpp"

namespace lembed {

/// The constructed values contradict strict monotonicity or a propagation
/// law; cannot happen for a complete run whose construction tier is feasible.
class ContradictionError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

enum class BreakpointKind { ConstrainedP, ConstrainedQ, Interpolated };

const char* to_string(BreakpointKind k);

struct Embedding {
  std::vector<Rational> thresholds;
  /// Every constrained point plus every interior breakpoint, in order. The
  /// normalized map `pi` may drop collinear entries of this list.
  std::vector<Breakpoint> breakpoints;
  std::vector<BreakpointKind> provenance;
  PiecewiseLinearMap pi;
  Rational pi1;
  /// Built from a truncated generation.
  bool approximate = false;
};

/// Embedding from a breakpoint list (as read back from JSON).
Embedding make_embedding(std::vector<Rational> thresholds, std::vector<Breakpoint> breakpoints,
                         std::vector<BreakpointKind> provenance = {});

struct ConstrainedValues {
  /// pi on every generated point of P and Q.
  std::map<Rational, Rational> values;
  /// sup of displacements over P.
  Rational m;
  /// min over i and q < r_i^*(0) of d_i - delta(q); absent when no such q.
  std::optional<Rational> upper;
  Rational pi1;
};

ConstrainedValues assign_constrained(const ConstrainedSets& sets, std::span<const Rational> d);

struct GapInterval {
  Rational lo;
  Rational hi;
};

struct GapEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  /// Maps interval `from` onto interval `to`.
  Step step;
};

struct GapPartition {
  std::vector<GapInterval> intervals;
  /// Class id per interval; ids are numbered by their leftmost interval.
  std::vector<std::size_t> class_of;
  std::vector<GapEdge> edges;
  bool approximate = false;

  std::size_t class_count() const;
  std::vector<std::size_t> members(std::size_t cls) const;
};

GapPartition gap_classes(const ConstrainedSets& sets, const StepGraphon& g);

Embedding build_pi(const ConstrainedSets& sets, const StepGraphon& g, std::span<const Rational> d,
                   const ConstrainedValues& values, const GapPartition& partition);

/// Direct construction for two-valued graphons with threshold 1.
Embedding two_valued_pi(const StepGraphon& g);

/// Per-interval maps recorded while propagating a class: pi on `to` equals
/// pi on `from` pulled back through `map` plus `shift`.
struct ClassLink {
  std::size_t from = 0;
  std::size_t to = 0;
  PiecewiseLinearMap map;
  Rational shift;
};

/// The links build_pi uses, exposed for coherence checks.
std::vector<ClassLink> class_links(const ConstrainedSets& sets, const StepGraphon& g, std::span<const Rational> d,
                                   const ConstrainedValues& values, const GapPartition& partition);

}  // namespace lembed
