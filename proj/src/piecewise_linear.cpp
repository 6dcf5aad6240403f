#include "lembed/piecewise_linear.hpp"

#include <algorithm>
#include <sstream>

namespace lembed {

namespace {

bool collinear(const Breakpoint& a, const Breakpoint& b, const Breakpoint& c) {
  return (b.y - a.y) * (c.x - b.x) == (c.y - b.y) * (b.x - a.x);
}

std::vector<Breakpoint> normalized(std::vector<Breakpoint> pts) {
  std::vector<Breakpoint> out;
  out.reserve(pts.size());
  for (auto& p : pts) {
    while (out.size() >= 2 && collinear(out[out.size() - 2], out.back(), p)) out.pop_back();
    out.push_back(std::move(p));
  }
  return out;
}

Rational interpolate(const Breakpoint& a, const Breakpoint& b, const Rational& x) {
  return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
}

std::string interval_str(const Rational& lo, const Rational& hi) {
  return "[" + lo.str() + ", " + hi.str() + "]";
}

}  // namespace

PiecewiseLinearMap::PiecewiseLinearMap(std::vector<Breakpoint> points) {
  if (points.size() < 2) throw std::invalid_argument("piecewise-linear map needs at least two breakpoints");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i - 1].x < points[i].x))
      throw std::invalid_argument("breakpoint x-coordinates not strictly increasing at x=" + points[i].x.str());
    if (!(points[i - 1].y < points[i].y))
      throw std::invalid_argument("breakpoint y-coordinates not strictly increasing at x=" + points[i].x.str());
  }
  points_ = normalized(std::move(points));
}

PiecewiseLinearMap PiecewiseLinearMap::identity(const Rational& lo, const Rational& hi) {
  return PiecewiseLinearMap({{lo, lo}, {hi, hi}});
}

PiecewiseLinearMap PiecewiseLinearMap::segment(const Rational& x0, const Rational& y0, const Rational& x1,
                                               const Rational& y1) {
  return PiecewiseLinearMap({{x0, y0}, {x1, y1}});
}

Rational PiecewiseLinearMap::operator()(const Rational& x) const {
  if (!in_domain(x))
    throw DomainError("x=" + x.str() + " outside domain " + interval_str(domain_min(), domain_max()),
                      domain_min(), domain_max(), x);
  auto it = std::lower_bound(points_.begin(), points_.end(), x,
                             [](const Breakpoint& b, const Rational& v) { return b.x < v; });
  if (it->x == x) return it->y;
  return interpolate(*(it - 1), *it, x);
}

Rational PiecewiseLinearMap::preimage(const Rational& y) const {
  if (!in_range(y))
    throw DomainError("y=" + y.str() + " outside range " + interval_str(range_min(), range_max()), range_min(),
                      range_max(), y);
  auto it = std::lower_bound(points_.begin(), points_.end(), y,
                             [](const Breakpoint& b, const Rational& v) { return b.y < v; });
  if (it->y == y) return it->x;
  const Breakpoint& a = *(it - 1);
  return a.x + (it->x - a.x) * (y - a.y) / (it->y - a.y);
}

PiecewiseLinearMap PiecewiseLinearMap::shifted(const Rational& dy) const {
  std::vector<Breakpoint> pts = points_;
  for (auto& p : pts) p.y += dy;
  return PiecewiseLinearMap(std::move(pts));
}

Rational eval(const PiecewiseLinearMap& f, const Rational& x) { return f(x); }

PiecewiseLinearMap invert(const PiecewiseLinearMap& f) {
  std::vector<Breakpoint> pts;
  pts.reserve(f.breakpoints().size());
  for (const auto& b : f.breakpoints()) pts.push_back({b.y, b.x});
  return PiecewiseLinearMap(std::move(pts));
}

std::optional<PiecewiseLinearMap> compose(const PiecewiseLinearMap& f, const PiecewiseLinearMap& g) {
  const Rational& ylo = max(g.range_min(), f.domain_min());
  const Rational& yhi = min(g.range_max(), f.domain_max());
  if (!(ylo < yhi)) return std::nullopt;
  Rational xlo = g.preimage(ylo);
  Rational xhi = g.preimage(yhi);

  std::vector<Rational> xs{xlo, xhi};
  for (const auto& b : g.breakpoints())
    if (xlo < b.x && b.x < xhi) xs.push_back(b.x);
  for (const auto& b : f.breakpoints())
    if (ylo < b.x && b.x < yhi) xs.push_back(g.preimage(b.x));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<Breakpoint> pts;
  pts.reserve(xs.size());
  for (auto& x : xs) {
    Rational y = f(g(x));
    pts.push_back({std::move(x), std::move(y)});
  }
  return PiecewiseLinearMap(std::move(pts));
}

PiecewiseLinearMap restrict(const PiecewiseLinearMap& f, const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw std::invalid_argument("restrict needs lo < hi, got " + interval_str(lo, hi));
  if (!f.in_domain(lo) || !f.in_domain(hi))
    throw DomainError(interval_str(lo, hi) + " not contained in domain " +
                          interval_str(f.domain_min(), f.domain_max()),
                      f.domain_min(), f.domain_max(), f.in_domain(lo) ? hi : lo);
  std::vector<Breakpoint> pts{{lo, f(lo)}};
  for (const auto& b : f.breakpoints())
    if (lo < b.x && b.x < hi) pts.push_back(b);
  pts.push_back({hi, f(hi)});
  return PiecewiseLinearMap(std::move(pts));
}

std::string to_string(const PiecewiseLinearMap& f) {
  std::ostringstream os;
  bool first = true;
  for (const auto& b : f.breakpoints()) {
    os << (first ? "" : ", ") << "(" << b.x << "," << b.y << ")";
    first = false;
  }
  return os.str();
}

}  // namespace lembed
