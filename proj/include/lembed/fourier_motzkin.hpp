#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lembed/rational.hpp"

namespace lembed {

/// Relation of a row `coeffs . x + constant  cmp  0`.
enum class Cmp { Lt, Le, Eq };

const char* to_string(Cmp c);

namespace fm {

struct Row {
  std::vector<Rational> coeffs;
  Rational constant;
  Cmp cmp = Cmp::Le;
};

/// Weight of one input row inside a certificate. Equality rows may carry
/// either sign; inequality rows never carry a negative weight.
struct Multiplier {
  std::size_t row = 0;
  Rational value;
};

struct Result {
  bool feasible = false;
  std::vector<Rational> witness;
  std::vector<Multiplier> certificate;
};

/// Decides a mixed strict/non-strict/equality system exactly.
///
/// Equalities are substituted out first. A homogeneous system containing a
/// strict positivity row `-c x_j < 0` is scaled to x_j = 1. The remaining
/// variables are eliminated highest index first, with strictness carried
/// through every combination, and the last variable is decided from its
/// tightest bounds. Feasible results carry a witness picked by midpoints of
/// the allowed intervals during back-substitution; infeasible results carry
/// multipliers over the input rows that sum to a false constant relation.
Result solve(std::span<const Row> rows, std::size_t num_vars);

/// Projection of the system onto the variables other than `var`. Rows that
/// reduce to a true constant relation are dropped; a false one is kept.
/// Throws std::invalid_argument if an equality involves `var`.
std::vector<Row> eliminate(std::span<const Row> rows, std::size_t num_vars, std::size_t var);

/// True when every solution of `rows` satisfies `row`.
bool implies(std::span<const Row> rows, std::size_t num_vars, const Row& row);

bool satisfies(const Row& row, std::span<const Rational> x);

/// True when the weighted sum of the cited rows cancels every variable and
/// leaves a constant relation that is false.
bool certificate_valid(std::span<const Row> rows, std::span<const Multiplier> certificate);

}  // namespace fm
}  // namespace lembed
