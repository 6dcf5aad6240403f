#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lembed/constrained_points.hpp"
#include "lembed/fourier_motzkin.hpp"

namespace lembed {

/// Which condition of the embedding criterion a constraint encodes.
enum class Origin { BaseOrder, POrder, QOrder, Coincidence, Cond2bLower, Cond2bUpper, CrossPQ };

const char* to_string(Origin o);

/// sum_i d_coeffs[i] * d_{i+1} + a_coeff * a + constant.
struct LinearForm {
  std::vector<std::int64_t> d_coeffs;
  std::int64_t a_coeff = 0;
  Rational constant;

  Rational evaluate(std::span<const Rational> d, const Rational& a) const;
};

struct Constraint {
  LinearForm lhs;
  Cmp cmp = Cmp::Lt;
  Origin origin = Origin::BaseOrder;
  /// Constrained points the constraint was read from.
  std::vector<Rational> points;
};

struct ConstraintSystem {
  std::size_t boundary_count = 0;
  /// Conditions every embedding must satisfy.
  std::vector<Constraint> necessary;
  /// Extra P/Q interleaving rows used by the construction.
  std::vector<Constraint> construction;

  std::vector<Constraint> combined() const;
};

enum class Status { Feasible, Infeasible, Inconclusive };
enum class Tier { Necessary, Construction };

const char* to_string(Status s);
const char* to_string(Tier t);

struct CertificateEntry {
  /// Index into the constraint list that was solved.
  std::size_t constraint = 0;
  Origin origin = Origin::BaseOrder;
  Rational multiplier;
};

struct FeasibilityOutcome {
  Status status = Status::Inconclusive;
  std::optional<std::vector<Rational>> witness_d;
  std::optional<Rational> witness_a;
  std::vector<CertificateEntry> certificate;
  Tier tier = Tier::Necessary;
};

ConstraintSystem build_system(const ConstrainedSets& sets);

/// Decides a constraint list over (d_1..d_{N-1}, a). Never returns
/// Inconclusive.
FeasibilityOutcome solve(std::span<const Constraint> constraints);

struct Decision {
  ConstraintSystem system;
  FeasibilityOutcome outcome;
  FeasibilityOutcome necessary;
  std::optional<FeasibilityOutcome> construction;
};

Decision decide(const ConstrainedSets& sets);

/// Exact substitution check of a witness against every constraint.
bool satisfied_by(std::span<const Constraint> constraints, std::span<const Rational> d, const Rational& a);
bool certificate_valid(std::span<const Constraint> constraints, std::span<const CertificateEntry> certificate);

/// The constraints as solver rows over (d_1..d_{N-1}, a).
std::vector<fm::Row> to_rows(std::span<const Constraint> constraints);

/// sig . d
Rational displacement(const Signature& sig, std::span<const Rational> d);

}  // namespace lembed
