#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lembed/rational.hpp"

namespace lembed {

/// Raised when a value falls outside the domain of a map.
class DomainError : public std::domain_error {
public:
  DomainError(const std::string& what, Rational lo, Rational hi, Rational x)
      : std::domain_error(what), lo_(std::move(lo)), hi_(std::move(hi)), x_(std::move(x)) {}
  const Rational& domain_min() const { return lo_; }
  const Rational& domain_max() const { return hi_; }
  const Rational& offending() const { return x_; }

private:
  Rational lo_, hi_, x_;
};

struct Breakpoint {
  Rational x;
  Rational y;
  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

/// Strictly increasing, continuous, piecewise-affine bijection
/// [x_first, x_last] -> [y_first, y_last] with rational breakpoints.
///
/// The breakpoint list is kept normalized (collinear interior points are
/// dropped), so two maps are equal iff their breakpoint lists are equal.
class PiecewiseLinearMap {
public:
  /// Throws std::invalid_argument unless there are at least two breakpoints
  /// with strictly increasing x and y.
  explicit PiecewiseLinearMap(std::vector<Breakpoint> points);

  static PiecewiseLinearMap identity(const Rational& lo, const Rational& hi);
  /// The segment through (x0, y0) and (x1, y1).
  static PiecewiseLinearMap segment(const Rational& x0, const Rational& y0, const Rational& x1,
                                    const Rational& y1);

  const std::vector<Breakpoint>& breakpoints() const { return points_; }
  const Rational& domain_min() const { return points_.front().x; }
  const Rational& domain_max() const { return points_.back().x; }
  const Rational& range_min() const { return points_.front().y; }
  const Rational& range_max() const { return points_.back().y; }
  bool in_domain(const Rational& x) const { return domain_min() <= x && x <= domain_max(); }
  bool in_range(const Rational& y) const { return range_min() <= y && y <= range_max(); }

  /// Throws DomainError for x outside the domain.
  Rational operator()(const Rational& x) const;
  /// Value of the inverse at y without building it. Throws DomainError.
  Rational preimage(const Rational& y) const;

  PiecewiseLinearMap shifted(const Rational& dy) const;

  friend bool operator==(const PiecewiseLinearMap&, const PiecewiseLinearMap&) = default;

private:
  std::vector<Breakpoint> points_;
};

Rational eval(const PiecewiseLinearMap& f, const Rational& x);
PiecewiseLinearMap invert(const PiecewiseLinearMap& f);
/// f o g on {x in dom(g) : g(x) in dom(f)}; empty when that set has fewer
/// than two points.
std::optional<PiecewiseLinearMap> compose(const PiecewiseLinearMap& f, const PiecewiseLinearMap& g);
/// Throws DomainError unless dom(f) contains [lo, hi]; std::invalid_argument
/// unless lo < hi.
PiecewiseLinearMap restrict(const PiecewiseLinearMap& f, const Rational& lo, const Rational& hi);

std::string to_string(const PiecewiseLinearMap& f);

}  // namespace lembed
