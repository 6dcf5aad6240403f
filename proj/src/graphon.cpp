#include "lembed/graphon.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace lembed {

StepGraphon::StepGraphon(std::vector<Rational> values, std::vector<PiecewiseLinearMap> upper)
    : values_(std::move(values)), upper_(std::move(upper)) {}

Rational StepGraphon::upper_at(std::size_t i, const Rational& x) const {
  const auto& r = boundary(i);
  if (x > r.domain_max()) return Rational(1);
  if (x < r.domain_min()) throw DomainError("x=" + x.str() + " below domain of boundary", 0, 1, x);
  return r(x);
}

Rational StepGraphon::lower_at(std::size_t i, const Rational& x) const {
  const auto& r = boundary(i);
  if (x < r.range_min()) return Rational(0);
  if (x > r.range_max()) throw DomainError("x=" + x.str() + " above range of boundary", 0, 1, x);
  return r.preimage(x);
}

namespace {

bool in_unit(const Rational& v) { return Rational(0) <= v && v <= Rational(1); }

// Breakpoint abscissae of r_i over [0,1], including the start of the plateau.
std::set<Rational> knots(const StepGraphon& g, std::size_t i) {
  std::set<Rational> xs;
  for (const auto& b : g.boundary(i).breakpoints())
    if (in_unit(b.x)) xs.insert(b.x);
  return xs;
}

void add(ValidationReport& rep, std::string msg, std::optional<Rational> x = std::nullopt) {
  rep.violations.push_back({std::move(msg), std::move(x)});
}

}  // namespace

ValidationReport validate(const StepGraphon& g) {
  ValidationReport rep;
  const std::size_t n = g.levels();
  if (n < 2) add(rep, "at least two values are required, got " + std::to_string(n));
  for (std::size_t k = 0; k < n; ++k)
    if (!in_unit(g.values()[k])) add(rep, "value " + std::to_string(k + 1) + " = " + g.values()[k].str() + " not in [0,1]");
  for (std::size_t k = 1; k < n; ++k)
    if (!(g.values()[k] < g.values()[k - 1]))
      add(rep, "values not strictly decreasing at position " + std::to_string(k + 1));
  if (g.boundary_count() + 1 != n && n >= 1) {
    add(rep, "expected " + std::to_string(n - 1) + " boundaries, got " + std::to_string(g.boundary_count()));
    rep.epsilon = 0;
    rep.ok = false;
    return rep;
  }

  bool shape_ok = true;
  for (std::size_t i = 1; i <= g.boundary_count(); ++i) {
    const auto& r = g.boundary(i);
    const std::string name = "boundary " + std::to_string(i);
    if (r.domain_min() != 0) {
      add(rep, name + " must start at x=0", r.domain_min());
      shape_ok = false;
    }
    if (r.range_max() != 1) {
      add(rep, name + " must end at value 1", r.domain_max());
      shape_ok = false;
    }
    if (r.domain_max() > 1) {
      add(rep, name + " reaches 1 beyond x=1", r.domain_max());
      shape_ok = false;
    }
  }
  if (!shape_ok) {
    rep.epsilon = 0;
    rep.ok = false;
    return rep;
  }

  std::optional<Rational> eps;
  auto consider = [&](const Rational& gap) { eps = eps ? min(*eps, gap) : gap; };

  // Gap functions are piecewise affine, so their extrema over an interval sit
  // at the knots of the pieces involved.
  for (std::size_t i = 1; i <= g.boundary_count(); ++i) {
    const auto& r = g.boundary(i);
    for (const auto& b : r.breakpoints()) {
      Rational gap = b.y - b.x;
      consider(gap);
      if (gap.sign() <= 0) {
        add(rep, "boundary " + std::to_string(i) + ": separation from diagonal is " + gap.str() + " at x=" + b.x.str(), b.x);
        break;
      }
    }
  }
  for (std::size_t i = 1; i <= g.boundary_count(); ++i) {
    for (std::size_t j = i + 1; j <= g.boundary_count(); ++j) {
      std::set<Rational> xs = knots(g, i);
      auto kj = knots(g, j);
      xs.insert(kj.begin(), kj.end());
      xs.insert(Rational(1));
      const Rational& cj = g.boundary(j).domain_max();
      for (const auto& x : xs) {
        Rational gap = g.upper_at(j, x) - g.upper_at(i, x);
        if (gap.sign() < 0) {
          add(rep, "boundaries " + std::to_string(i) + " and " + std::to_string(j) + " not nested at x=" + x.str(), x);
          break;
        }
        if (x <= cj) {
          consider(gap);
          if (gap.sign() == 0) {
            add(rep, "separation between boundaries " + std::to_string(i) + " and " + std::to_string(j) + " is 0 at x=" + x.str(), x);
            break;
          }
        }
      }
    }
  }

  rep.ok = rep.violations.empty() && eps && eps->sign() > 0;
  rep.epsilon = rep.ok ? *eps : Rational(0);
  return rep;
}

std::size_t level_at(const StepGraphon& g, const Rational& x, const Rational& y) {
  if (!in_unit(x) || !in_unit(y)) throw DomainError("level_at arguments must lie in [0,1]", 0, 1, in_unit(x) ? y : x);
  const Rational& u = min(x, y);
  const Rational& v = max(x, y);
  for (std::size_t i = 1; i <= g.boundary_count(); ++i)
    if (v <= g.upper_at(i, u)) return i;
  return g.levels();
}

RestrictedMaps restricted_maps(const StepGraphon& g) {
  if (!validate(g).ok) throw std::invalid_argument("restricted maps require a valid graphon");
  RestrictedMaps maps;
  for (std::size_t i = 1; i <= g.boundary_count(); ++i) {
    maps.upper.push_back(g.boundary(i));
    maps.lower.push_back(invert(g.boundary(i)));
  }
  return maps;
}

std::string format_spec(const StepGraphon& g) {
  std::ostringstream os;
  os << "values = ";
  for (std::size_t k = 0; k < g.levels(); ++k) os << (k ? ", " : "") << g.values()[k];
  os << "\n";
  for (std::size_t i = 1; i <= g.boundary_count(); ++i) {
    os << "boundary " << i << " = ";
    bool first = true;
    for (const auto& b : g.boundary(i).breakpoints()) {
      os << (first ? "" : ", ") << "(" << b.x << ", " << b.y << ")";
      first = false;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace lembed
