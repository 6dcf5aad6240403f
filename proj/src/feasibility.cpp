#include "lembed/feasibility.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace lembed {

const char* to_string(Origin o) {
  switch (o) {
    case Origin::BaseOrder: return "BASE_ORDER";
    case Origin::POrder: return "P_ORDER";
    case Origin::QOrder: return "Q_ORDER";
    case Origin::Coincidence: return "COINCIDENCE";
    case Origin::Cond2bLower: return "COND_2B_LOWER";
    case Origin::Cond2bUpper: return "COND_2B_UPPER";
    case Origin::CrossPQ: return "CROSS_PQ";
  }
  return "?";
}

const char* to_string(Status s) {
  switch (s) {
    case Status::Feasible: return "FEASIBLE";
    case Status::Infeasible: return "INFEASIBLE";
    case Status::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

const char* to_string(Tier t) { return t == Tier::Necessary ? "necessary" : "construction"; }

Rational LinearForm::evaluate(std::span<const Rational> d, const Rational& a) const {
  Rational v = constant;
  for (std::size_t i = 0; i < d_coeffs.size(); ++i)
    if (d_coeffs[i] != 0) v += Rational(static_cast<long>(d_coeffs[i])) * d[i];
  if (a_coeff != 0) v += Rational(static_cast<long>(a_coeff)) * a;
  return v;
}

Rational displacement(const Signature& sig, std::span<const Rational> d) {
  Rational v;
  for (std::size_t i = 0; i < sig.size(); ++i)
    if (sig[i] != 0) v += Rational(static_cast<long>(sig[i])) * d[i];
  return v;
}

std::vector<Constraint> ConstraintSystem::combined() const {
  std::vector<Constraint> all = necessary;
  all.insert(all.end(), construction.begin(), construction.end());
  return all;
}

namespace {

LinearForm diff(const Signature& lhs, const Signature& rhs, std::int64_t a_coeff = 0) {
  LinearForm f;
  f.d_coeffs.resize(lhs.size());
  for (std::size_t i = 0; i < lhs.size(); ++i) f.d_coeffs[i] = lhs[i] - rhs[i];
  f.a_coeff = a_coeff;
  return f;
}

void ordered_chain(const std::map<Rational, PointRecord>& pts, Origin origin, std::vector<Constraint>& out) {
  const PointRecord* prev = nullptr;
  const Rational* prev_x = nullptr;
  for (const auto& [x, rec] : pts) {
    if (prev) out.push_back({diff(prev->witness.signature, rec.witness.signature), Cmp::Lt, origin, {*prev_x, x}});
    prev = &rec;
    prev_x = &x;
  }
}

}  // namespace

ConstraintSystem build_system(const ConstrainedSets& sets) {
  ConstraintSystem sys;
  const std::size_t m = sets.boundary_count;
  sys.boundary_count = m;
  const Signature zero(m, 0);

  for (std::size_t i = 0; i < m; ++i) {
    Signature lo = zero, hi = zero;
    if (i > 0) lo[i - 1] = 1;
    hi[i] = 1;
    sys.necessary.push_back({diff(lo, hi), Cmp::Lt, Origin::BaseOrder, {}});
  }
  ordered_chain(sets.p_points, Origin::POrder, sys.necessary);
  ordered_chain(sets.q_points, Origin::QOrder, sys.necessary);
  for (const auto& c : sets.coincidences)
    sys.necessary.push_back({diff(c.canonical.signature, c.other.signature), Cmp::Eq, Origin::Coincidence, {c.point}});

  if (sets.relation == SetRelation::Identical) return sys;

  for (const auto& [p, rec] : sets.p_points)
    sys.necessary.push_back({diff(rec.witness.signature, zero, -1), Cmp::Lt, Origin::Cond2bLower, {p}});
  sys.necessary.push_back({diff(zero, zero, -1), Cmp::Le, Origin::Cond2bLower, {}});
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& [q, rec] : sets.q_points) {
      if (!(q < sets.boundary_starts[i])) break;
      Signature unit = zero;
      unit[i] = 1;
      sys.necessary.push_back({diff(rec.witness.signature, unit, 1), Cmp::Lt, Origin::Cond2bUpper, {q}});
    }
  }

  // Interleaving of P and Q; neighbours in the merged order suffice given the
  // P and Q chains.
  auto pit = sets.p_points.begin();
  auto qit = sets.q_points.begin();
  bool have_prev = false, prev_in_p = false;
  const Rational* prev_x = nullptr;
  const Signature* prev_sig = nullptr;
  while (pit != sets.p_points.end() || qit != sets.q_points.end()) {
    bool take_p = qit == sets.q_points.end() || (pit != sets.p_points.end() && pit->first < qit->first);
    auto& it = take_p ? pit : qit;
    const Rational& x = it->first;
    const Signature& sig = it->second.witness.signature;
    if (have_prev && prev_in_p != take_p) {
      // pi(prev) < pi(x), where pi = sig.d on P and a + sig.d on Q.
      std::int64_t a_coeff = prev_in_p ? -1 : 1;
      sys.construction.push_back({diff(*prev_sig, sig, a_coeff), Cmp::Lt, Origin::CrossPQ, {*prev_x, x}});
    }
    have_prev = true;
    prev_in_p = take_p;
    prev_x = &x;
    prev_sig = &sig;
    ++it;
  }
  return sys;
}

std::vector<fm::Row> to_rows(std::span<const Constraint> constraints) {
  std::vector<fm::Row> rows;
  rows.reserve(constraints.size());
  for (const auto& c : constraints) {
    fm::Row r;
    for (auto v : c.lhs.d_coeffs) r.coeffs.emplace_back(static_cast<long>(v));
    r.coeffs.emplace_back(static_cast<long>(c.lhs.a_coeff));
    r.constant = c.lhs.constant;
    r.cmp = c.cmp;
    rows.push_back(std::move(r));
  }
  return rows;
}

FeasibilityOutcome solve(std::span<const Constraint> constraints) {
  if (constraints.empty()) throw std::invalid_argument("solve needs at least one constraint");
  const std::size_t m = constraints.front().lhs.d_coeffs.size();
  for (const auto& c : constraints)
    if (c.lhs.d_coeffs.size() != m) throw std::invalid_argument("constraints disagree on threshold count");
  const bool uses_a = std::any_of(constraints.begin(), constraints.end(), [](const Constraint& c) { return c.lhs.a_coeff != 0; });

  auto rows = to_rows(constraints);
  fm::Result res = fm::solve(rows, m + 1);
  FeasibilityOutcome out;
  if (res.feasible) {
    out.status = Status::Feasible;
    out.witness_d = std::vector<Rational>(res.witness.begin(), res.witness.begin() + static_cast<std::ptrdiff_t>(m));
    if (uses_a) out.witness_a = res.witness[m];
  } else {
    out.status = Status::Infeasible;
    for (const auto& mult : res.certificate)
      out.certificate.push_back({mult.row, constraints[mult.row].origin, mult.value});
  }
  return out;
}

Decision decide(const ConstrainedSets& sets) {
  Decision dec;
  dec.system = build_system(sets);
  dec.necessary = solve(dec.system.necessary);
  dec.necessary.tier = Tier::Necessary;
  if (dec.necessary.status == Status::Infeasible) {
    dec.outcome = dec.necessary;
    // A refutation is not conclusive in the exceptional P = Q configuration.
    if (sets.exception_flag) dec.outcome.status = Status::Inconclusive;
    return dec;
  }
  auto all = dec.system.combined();
  FeasibilityOutcome full = solve(all);
  full.tier = Tier::Construction;
  dec.construction = full;
  if (full.status == Status::Feasible) {
    dec.outcome = full;
  } else {
    dec.outcome = dec.necessary;
    dec.outcome.status = Status::Inconclusive;
    dec.outcome.tier = Tier::Construction;
  }
  return dec;
}

bool satisfied_by(std::span<const Constraint> constraints, std::span<const Rational> d, const Rational& a) {
  for (const auto& c : constraints) {
    Rational v = c.lhs.evaluate(d, a);
    bool ok = c.cmp == Cmp::Lt ? v.sign() < 0 : (c.cmp == Cmp::Le ? v.sign() <= 0 : v.is_zero());
    if (!ok) return false;
  }
  return true;
}

bool certificate_valid(std::span<const Constraint> constraints, std::span<const CertificateEntry> certificate) {
  auto rows = to_rows(constraints);
  std::vector<fm::Multiplier> mult;
  for (const auto& e : certificate) {
    if (e.constraint >= constraints.size() || constraints[e.constraint].origin != e.origin) return false;
    mult.push_back({e.constraint, e.multiplier});
  }
  return fm::certificate_valid(rows, mult);
}

}  // namespace lembed
