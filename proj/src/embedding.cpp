#include "lembed/embedding.hpp"

#include <algorithm>
#include <deque>

#include "lembed/union_find.hpp"

namespace lembed {

const char* to_string(BreakpointKind k) {
  switch (k) {
    case BreakpointKind::ConstrainedP: return "CONSTRAINED_P";
    case BreakpointKind::ConstrainedQ: return "CONSTRAINED_Q";
    case BreakpointKind::Interpolated: return "INTERPOLATED";
  }
  return "?";
}

Embedding make_embedding(std::vector<Rational> thresholds, std::vector<Breakpoint> breakpoints,
                         std::vector<BreakpointKind> provenance) {
  if (provenance.empty()) provenance.assign(breakpoints.size(), BreakpointKind::Interpolated);
  if (provenance.size() != breakpoints.size()) throw std::invalid_argument("provenance length mismatch");
  for (std::size_t i = 0; i < thresholds.size(); ++i)
    if (thresholds[i].sign() <= 0 || (i > 0 && !(thresholds[i - 1] < thresholds[i])))
      throw std::invalid_argument("thresholds must be positive and strictly increasing");
  PiecewiseLinearMap pi(breakpoints);
  if (pi(Rational(0)) != 0) throw std::invalid_argument("embedding must satisfy pi(0) = 0");
  if (pi.domain_min() != 0 || pi.domain_max() != 1) throw std::invalid_argument("embedding must be defined on [0,1]");
  Rational pi1 = pi(Rational(1));
  return Embedding{std::move(thresholds), std::move(breakpoints), std::move(provenance), std::move(pi), std::move(pi1)};
}

ConstrainedValues assign_constrained(const ConstrainedSets& sets, std::span<const Rational> d) {
  if (d.size() != sets.boundary_count) throw std::invalid_argument("threshold count does not match graphon");
  ConstrainedValues out;
  bool first = true;
  for (const auto& [p, rec] : sets.p_points) {
    Rational v = displacement(rec.witness.signature, d);
    if (first || v > out.m) out.m = v;
    first = false;
    out.values.emplace(p, std::move(v));
  }

  if (sets.relation == SetRelation::Identical) {
    out.pi1 = out.values.at(Rational(1));
    for (const auto& [q, rec] : sets.q_points)
      out.values.try_emplace(q, out.pi1 + displacement(rec.witness.signature, d));
  } else {
    for (std::size_t i = 0; i < sets.boundary_count; ++i) {
      for (const auto& [q, rec] : sets.q_points) {
        if (!(q < sets.boundary_starts[i])) break;
        Rational bound = d[i] - displacement(rec.witness.signature, d);
        if (!out.upper || bound < *out.upper) out.upper = bound;
      }
    }
    if (out.upper && !(out.m < *out.upper))
      throw ContradictionError("no room for pi(1): m = " + out.m.str() + " >= M = " + out.upper->str());
    out.pi1 = out.upper ? (out.m + *out.upper) / 2 : out.m + 1;
    for (const auto& [q, rec] : sets.q_points) out.values.emplace(q, out.pi1 + displacement(rec.witness.signature, d));
  }

  const std::pair<const Rational, Rational>* prev = nullptr;
  for (const auto& kv : out.values) {
    if (prev && !(prev->second < kv.second))
      throw ContradictionError("pi not strictly increasing between " + prev->first.str() + " and " + kv.first.str());
    prev = &kv;
  }
  return out;
}

std::size_t GapPartition::class_count() const {
  return class_of.empty() ? 0 : *std::max_element(class_of.begin(), class_of.end()) + 1;
}

std::vector<std::size_t> GapPartition::members(std::size_t cls) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < class_of.size(); ++i)
    if (class_of[i] == cls) out.push_back(i);
  return out;
}

GapPartition gap_classes(const ConstrainedSets& sets, const StepGraphon& g) {
  std::vector<Rational> pts;
  for (const auto& kv : sets.p_points) pts.push_back(kv.first);
  for (const auto& kv : sets.q_points) pts.push_back(kv.first);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  GapPartition part;
  part.approximate = !sets.complete;
  std::map<Rational, std::size_t> by_lo;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    by_lo.emplace(pts[k], part.intervals.size());
    part.intervals.push_back({pts[k], pts[k + 1]});
  }

  UnionFind uf(part.intervals.size());
  const auto steps = all_steps(g.boundary_count());
  for (std::size_t k = 0; k < part.intervals.size(); ++k) {
    const auto& iv = part.intervals[k];
    for (const auto& s : steps) {
      auto a = apply_step(g, s, iv.lo);
      auto b = apply_step(g, s, iv.hi);
      if (!a || !b) continue;
      auto it = by_lo.find(*a);
      if (it == by_lo.end() || part.intervals[it->second].hi != *b) {
        if (sets.complete)
          throw std::logic_error("image of gap (" + iv.lo.str() + ", " + iv.hi.str() + ") under " + s.name() +
                                 " is not a gap interval");
        continue;
      }
      part.edges.push_back({k, it->second, s});
      uf.merge(k, it->second);
    }
  }

  std::map<std::size_t, std::size_t> ids;
  part.class_of.resize(part.intervals.size());
  for (std::size_t k = 0; k < part.intervals.size(); ++k) {
    auto [it, inserted] = ids.try_emplace(uf.find(k), ids.size());
    part.class_of[k] = it->second;
  }
  return part;
}

namespace {

const PiecewiseLinearMap& step_map(const RestrictedMaps& maps, const Step& s) {
  const auto idx = static_cast<std::size_t>(s.index - 1);
  return s.kind == StepKind::Upper ? maps.upper.at(idx) : maps.lower.at(idx);
}

Rational step_displacement(const Step& s, std::span<const Rational> d) {
  const Rational& di = d[static_cast<std::size_t>(s.index - 1)];
  return s.kind == StepKind::Upper ? di : -di;
}

}  // namespace

std::vector<ClassLink> class_links(const ConstrainedSets& sets, const StepGraphon& g, std::span<const Rational> d,
                                   const ConstrainedValues& values, const GapPartition& partition) {
  const auto maps = restricted_maps(g);
  const auto& ivs = partition.intervals;

  // Undirected adjacency over edges whose endpoint values obey the step law.
  std::vector<std::vector<std::pair<std::size_t, Step>>> adj(ivs.size());
  for (const auto& e : partition.edges) {
    const Rational shift = step_displacement(e.step, d);
    bool consistent = values.values.at(ivs[e.to].lo) - values.values.at(ivs[e.from].lo) == shift &&
                      values.values.at(ivs[e.to].hi) - values.values.at(ivs[e.from].hi) == shift;
    if (!consistent) {
      if (sets.complete)
        throw ContradictionError("step " + e.step.name() + " breaks the displacement law on (" + ivs[e.from].lo.str() +
                                 ", " + ivs[e.from].hi.str() + ")");
      continue;
    }
    adj[e.from].push_back({e.to, e.step});
    adj[e.to].push_back({e.from, e.step.inverse()});
  }

  std::vector<ClassLink> links;
  std::vector<bool> seen(ivs.size(), false);
  for (std::size_t rep = 0; rep < ivs.size(); ++rep) {
    if (seen[rep]) continue;
    seen[rep] = true;
    std::deque<std::size_t> queue{rep};
    std::map<std::size_t, ClassLink> reached;
    reached.emplace(rep, ClassLink{rep, rep, PiecewiseLinearMap::identity(ivs[rep].lo, ivs[rep].hi), Rational(0)});
    while (!queue.empty()) {
      std::size_t cur = queue.front();
      queue.pop_front();
      for (const auto& [next, step] : adj[cur]) {
        if (seen[next]) continue;
        seen[next] = true;
        const ClassLink& base = reached.at(cur);
        auto mapped = compose(step_map(maps, step), base.map);
        if (!mapped || mapped->domain_min() != ivs[rep].lo || mapped->domain_max() != ivs[rep].hi)
          throw std::logic_error("class propagation lost part of the representative interval");
        ClassLink link{rep, next, std::move(*mapped), base.shift + step_displacement(step, d)};
        reached.emplace(next, std::move(link));
        queue.push_back(next);
      }
    }
    reached.erase(rep);
    for (auto& kv : reached) links.push_back(std::move(kv.second));
  }
  return links;
}

Embedding build_pi(const ConstrainedSets& sets, const StepGraphon& g, std::span<const Rational> d,
                   const ConstrainedValues& values, const GapPartition& partition) {
  const auto& ivs = partition.intervals;
  const auto links = class_links(sets, g, d, values, partition);
  std::vector<const ClassLink*> link_of(ivs.size(), nullptr);
  for (const auto& l : links) link_of[l.to] = &l;

  std::vector<Breakpoint> pts;
  for (std::size_t k = 0; k < ivs.size(); ++k) {
    const ClassLink* link = link_of[k];
    const std::size_t rep = link ? link->from : k;
    const Rational& y0 = values.values.at(ivs[rep].lo);
    const Rational& y1 = values.values.at(ivs[rep].hi);
    if (!(y0 < y1)) throw ContradictionError("pi not increasing across (" + ivs[rep].lo.str() + ", " + ivs[rep].hi.str() + ")");
    PiecewiseLinearMap piece = PiecewiseLinearMap::segment(ivs[rep].lo, y0, ivs[rep].hi, y1);
    if (link) piece = compose(piece, invert(link->map)).value().shifted(link->shift);
    if (piece(ivs[k].lo) != values.values.at(ivs[k].lo) || piece(ivs[k].hi) != values.values.at(ivs[k].hi))
      throw ContradictionError("propagated piece on (" + ivs[k].lo.str() + ", " + ivs[k].hi.str() +
                               ") misses its endpoint values");
    for (const auto& b : piece.breakpoints())
      if (pts.empty() || pts.back().x < b.x) pts.push_back(b);
  }

  std::vector<BreakpointKind> prov;
  for (const auto& b : pts) {
    if (sets.p_points.count(b.x)) prov.push_back(BreakpointKind::ConstrainedP);
    else if (sets.q_points.count(b.x)) prov.push_back(BreakpointKind::ConstrainedQ);
    else prov.push_back(BreakpointKind::Interpolated);
  }
  std::vector<Rational> thresholds(d.begin(), d.end());
  Embedding e = [&] {
    try {
      return make_embedding(std::move(thresholds), std::move(pts), std::move(prov));
    } catch (const std::invalid_argument& ex) {
      throw ContradictionError(std::string("assembled pi is not strictly increasing: ") + ex.what());
    }
  }();
  e.approximate = partition.approximate;
  return e;
}

Embedding two_valued_pi(const StepGraphon& g) {
  if (g.levels() != 2) throw std::invalid_argument("two-valued constructor needs exactly two values");
  if (!validate(g).ok) throw std::invalid_argument("two-valued constructor needs a valid graphon");
  const PiecewiseLinearMap& r = g.boundary(1);
  const PiecewiseLinearMap lower = invert(r);

  std::vector<Rational> xs{Rational(0)};
  while (xs.back() < 1) xs.push_back(g.upper_at(1, xs.back()));

  const PiecewiseLinearMap base = PiecewiseLinearMap::segment(0, 0, xs[1], 1);
  std::vector<Breakpoint> pts = base.breakpoints();
  std::vector<BreakpointKind> prov{BreakpointKind::ConstrainedP, BreakpointKind::ConstrainedP};
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    // l^i maps [x_i, x_{i+1}] into [0, x_1].
    PiecewiseLinearMap back = restrict(lower, xs[i], xs[i + 1]);
    for (std::size_t j = 1; j < i; ++j) back = compose(lower, back).value();
    PiecewiseLinearMap piece = compose(base, back).value().shifted(Rational(static_cast<long>(i)));
    for (const auto& b : piece.breakpoints()) {
      if (!(pts.back().x < b.x)) continue;
      pts.push_back(b);
      prov.push_back(b.x == xs[i + 1] ? BreakpointKind::ConstrainedP : BreakpointKind::Interpolated);
    }
  }
  return make_embedding({Rational(1)}, std::move(pts), std::move(prov));
}

}  // namespace lembed
