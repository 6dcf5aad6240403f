#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lembed/piecewise_linear.hpp"
#include "lembed/rational.hpp"

namespace lembed {

/// Syntax or arity problem in a graphon spec file.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& message, int line, int column)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

/// Diagonally increasing step graphon with values alpha_1 > ... > alpha_N.
///
/// Boundary i (1-based) stores the strictly increasing part of the upper
/// boundary r_i on [0, c_i] with r_i(c_i) = 1; r_i(x) = 1 for x >= c_i. Lower
/// boundaries are never stored, they are the inverses.
class StepGraphon {
public:
  StepGraphon(std::vector<Rational> values, std::vector<PiecewiseLinearMap> upper);

  std::size_t levels() const { return values_.size(); }
  std::size_t boundary_count() const { return upper_.size(); }
  const std::vector<Rational>& values() const { return values_; }
  /// alpha_level, 1-based.
  const Rational& value(std::size_t level) const { return values_.at(level - 1); }
  /// Strictly increasing part of r_i, i.e. r_i^* (1-based).
  const PiecewiseLinearMap& boundary(std::size_t i) const { return upper_.at(i - 1); }

  /// r_i(x) on all of [0, 1].
  Rational upper_at(std::size_t i, const Rational& x) const;
  /// l_i(x) on all of [0, 1].
  Rational lower_at(std::size_t i, const Rational& x) const;

private:
  std::vector<Rational> values_;
  std::vector<PiecewiseLinearMap> upper_;
};

struct Violation {
  std::string message;
  std::optional<Rational> x;
};

struct ValidationReport {
  bool ok = false;
  Rational epsilon;
  std::vector<Violation> violations;
};

StepGraphon parse_spec(std::istream& in);
StepGraphon parse_spec(const std::string& text);
StepGraphon load_spec(const std::string& path);
/// Inverse of parse_spec (canonical rational strings).
std::string format_spec(const StepGraphon& g);

ValidationReport validate(const StepGraphon& g);

/// Least i with max(x,y) <= r_i(min(x,y)), or N. Throws DomainError outside [0,1].
std::size_t level_at(const StepGraphon& g, const Rational& x, const Rational& y);

/// r_i^* and l_i^* for every boundary; lower(i) = invert(upper(i)).
struct RestrictedMaps {
  std::vector<PiecewiseLinearMap> upper;
  std::vector<PiecewiseLinearMap> lower;
};

/// Throws std::invalid_argument when validate(g) fails.
RestrictedMaps restricted_maps(const StepGraphon& g);

}  // namespace lembed
