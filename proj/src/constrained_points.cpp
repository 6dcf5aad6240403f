#include "lembed/constrained_points.hpp"

#include <array>
#include <set>
#include <stdexcept>

namespace lembed {

std::string Step::name() const { return (kind == StepKind::Upper ? "R" : "L") + std::to_string(index); }

Step Step::parse(std::string_view name) {
  if (name.size() < 2 || (name[0] != 'R' && name[0] != 'L'))
    throw std::invalid_argument("malformed step name '" + std::string(name) + "'");
  int idx = 0;
  for (char c : name.substr(1)) {
    if (c < '0' || c > '9') throw std::invalid_argument("malformed step name '" + std::string(name) + "'");
    idx = idx * 10 + (c - '0');
  }
  if (idx < 1) throw std::invalid_argument("step index must be >= 1");
  return {name[0] == 'R' ? StepKind::Upper : StepKind::Lower, idx};
}

std::vector<Step> all_steps(std::size_t boundary_count) {
  std::vector<Step> steps;
  for (int i = 1; i <= static_cast<int>(boundary_count); ++i) steps.push_back({StepKind::Upper, i});
  for (int i = 1; i <= static_cast<int>(boundary_count); ++i) steps.push_back({StepKind::Lower, i});
  return steps;
}

Witness Witness::empty(std::size_t boundary_count) { return {{}, Signature(boundary_count, 0)}; }

Witness Witness::then(const Step& step) const {
  Witness w;
  w.steps.reserve(steps.size() + 1);
  w.steps.push_back(step);
  w.steps.insert(w.steps.end(), steps.begin(), steps.end());
  w.signature = signature;
  w.signature.at(step.index - 1) += step.sign();
  return w;
}

std::optional<Rational> apply_step(const StepGraphon& g, const Step& s, const Rational& x) {
  const auto& r = g.boundary(static_cast<std::size_t>(s.index));
  if (s.kind == StepKind::Upper) {
    if (!r.in_domain(x)) return std::nullopt;
    return r(x);
  }
  if (!r.in_range(x)) return std::nullopt;
  return r.preimage(x);
}

std::optional<Rational> replay(const StepGraphon& g, const Witness& w, const Rational& seed) {
  std::optional<Rational> x = seed;
  for (auto it = w.steps.rbegin(); it != w.steps.rend() && x; ++it) x = apply_step(g, *it, *x);
  return x;
}

namespace {

struct Generator {
  const StepGraphon& g;
  std::vector<Step> steps;
  // Every signature seen per point, indexed by seed.
  std::array<std::map<Rational, std::set<Signature>>, 2> seen;

  // Expands one frontier level. Returns the new frontier; when `store` is false
  // new points are only detected, not recorded.
  std::vector<Rational> expand(ConstrainedSets& sets, Seed seed, const std::vector<Rational>& frontier, int depth,
                               bool store, bool& found_new) {
    auto& pts = seed == Seed::Zero ? sets.p_points : sets.q_points;
    auto& sigs = seen[seed == Seed::Zero ? 0 : 1];
    std::vector<Rational> next;
    for (const auto& x : frontier) {
      const Witness base = pts.at(x).witness;
      for (const auto& s : steps) {
        auto y = apply_step(g, s, x);
        if (!y) continue;
        auto it = pts.find(*y);
        if (it == pts.end()) {
          found_new = true;
          if (!store) continue;
          Witness w = base.then(s);
          sigs[*y].insert(w.signature);
          pts.emplace(*y, PointRecord{std::move(w), depth});
          next.push_back(*y);
          continue;
        }
        Witness w = base.then(s);
        auto& known = sigs[*y];
        if (known.insert(w.signature).second)
          sets.coincidences.push_back({seed, *y, it->second.witness, std::move(w)});
      }
    }
    return next;
  }
};

}  // namespace

ConstrainedSets generate(const StepGraphon& g, int max_depth) {
  if (max_depth < 0) throw std::invalid_argument("depth must be non-negative");
  if (!validate(g).ok) throw std::invalid_argument("constrained points require a valid graphon");

  ConstrainedSets sets;
  sets.boundary_count = g.boundary_count();
  sets.max_depth = max_depth;
  for (std::size_t i = 1; i <= g.boundary_count(); ++i) sets.boundary_starts.push_back(g.boundary(i).range_min());

  Generator gen{g, all_steps(g.boundary_count()), {}};
  const Witness seed_witness = Witness::empty(g.boundary_count());
  sets.p_points.emplace(Rational(0), PointRecord{seed_witness, 0});
  sets.q_points.emplace(Rational(1), PointRecord{seed_witness, 0});
  gen.seen[0][Rational(0)].insert(seed_witness.signature);
  gen.seen[1][Rational(1)].insert(seed_witness.signature);

  std::vector<Rational> p_frontier{Rational(0)}, q_frontier{Rational(1)};
  int depth = 0;
  while (depth < max_depth && (!p_frontier.empty() || !q_frontier.empty())) {
    ++depth;
    bool found_new = false;
    p_frontier = gen.expand(sets, Seed::Zero, p_frontier, depth, true, found_new);
    q_frontier = gen.expand(sets, Seed::One, q_frontier, depth, true, found_new);
    if (found_new) sets.depth_reached = depth;
  }

  // One probing pass past the cap decides completeness. Coincidences it meets
  // are genuine and kept.
  bool found_new = false;
  gen.expand(sets, Seed::Zero, p_frontier, depth + 1, false, found_new);
  gen.expand(sets, Seed::One, q_frontier, depth + 1, false, found_new);
  sets.complete = !found_new;

  const bool identical = sets.p_points.count(Rational(1)) > 0 || sets.q_points.count(Rational(0)) > 0;
  sets.relation = identical ? SetRelation::Identical : SetRelation::DisjointSoFar;
  const std::size_t last = g.boundary_count();
  sets.exception_flag = identical && g.boundary(1).range_min() > g.boundary(last).domain_max() &&
                        g.boundary(last).range_min() > g.boundary(1).domain_max();
  return sets;
}

std::optional<PiecewiseLinearMap> composed_map(const RestrictedMaps& maps, const Witness& w) {
  auto map_of = [&](const Step& s) -> const PiecewiseLinearMap& {
    const auto idx = static_cast<std::size_t>(s.index - 1);
    return s.kind == StepKind::Upper ? maps.upper.at(idx) : maps.lower.at(idx);
  };
  if (w.steps.empty()) return std::nullopt;
  std::optional<PiecewiseLinearMap> acc = map_of(w.steps.back());
  for (auto it = w.steps.rbegin() + 1; it != w.steps.rend() && acc; ++it) acc = compose(map_of(*it), *acc);
  return acc;
}

const char* to_string(SetRelation r) {
  switch (r) {
    case SetRelation::DisjointSoFar: return "DISJOINT_SO_FAR";
    case SetRelation::Identical: return "IDENTICAL";
    case SetRelation::Unknown: break;
  }
  return "UNKNOWN";
}

}  // namespace lembed
