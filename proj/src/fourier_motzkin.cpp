#include "lembed/fourier_motzkin.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

namespace lembed {

const char* to_string(Cmp c) {
  switch (c) {
    case Cmp::Lt: return "<";
    case Cmp::Le: return "<=";
    case Cmp::Eq: return "=";
  }
  return "?";
}

namespace fm {

namespace {

// Row tracked together with the input rows that produced it.
struct Derived {
  std::vector<Rational> c;
  Rational k;
  Cmp cmp = Cmp::Le;
  std::map<std::size_t, Rational> origin;

  bool is_constant() const {
    return std::all_of(c.begin(), c.end(), [](const Rational& v) { return v.is_zero(); });
  }
  // Only meaningful for constant rows.
  bool is_false() const {
    switch (cmp) {
      case Cmp::Eq: return !k.is_zero();
      case Cmp::Lt: return k.sign() >= 0;
      case Cmp::Le: return k.sign() > 0;
    }
    return false;
  }
  std::size_t nonzero_count() const {
    return static_cast<std::size_t>(std::count_if(c.begin(), c.end(), [](const Rational& v) { return !v.is_zero(); }));
  }
};

Cmp combined_cmp(Cmp a, Cmp b) {
  if (a == Cmp::Eq) return b;
  if (b == Cmp::Eq) return a;
  return (a == Cmp::Lt || b == Cmp::Lt) ? Cmp::Lt : Cmp::Le;
}

Derived combine(const Derived& a, const Rational& wa, const Derived& b, const Rational& wb) {
  Derived r;
  r.c.resize(a.c.size());
  for (std::size_t j = 0; j < a.c.size(); ++j) r.c[j] = wa * a.c[j] + wb * b.c[j];
  r.k = wa * a.k + wb * b.k;
  r.cmp = combined_cmp(a.cmp, b.cmp);
  r.origin = a.origin;
  for (auto& [row, v] : r.origin) v *= wa;
  for (const auto& [row, v] : b.origin) {
    auto& slot = r.origin[row];
    slot += wb * v;
  }
  std::erase_if(r.origin, [](const auto& kv) { return kv.second.is_zero(); });
  return r;
}

void scale(Derived& d, const Rational& w) {
  for (auto& v : d.c) v *= w;
  d.k *= w;
  for (auto& [row, v] : d.origin) v *= w;
}

// Positive scaling so the first nonzero coefficient has magnitude one.
void normalize(Derived& d) {
  for (const auto& v : d.c) {
    if (!v.is_zero()) {
      scale(d, Rational(1) / abs(v));
      return;
    }
  }
}

std::vector<Multiplier> to_certificate(const std::map<std::size_t, Rational>& origin) {
  std::vector<Multiplier> out;
  for (const auto& [row, v] : origin)
    if (!v.is_zero()) out.push_back({row, v});
  return out;
}

// x op bound, read off a row with nonzero coefficient on the variable.
struct Bound {
  Rational value;
  bool strict = false;
  std::size_t row = 0;
};

// Keeps only the tightest row per normalized coefficient vector.
class RowSet {
public:
  // Returns false when the row is a false constant relation.
  bool add(Derived d) {
    if (d.is_constant()) {
      if (d.is_false()) {
        conflict_ = std::move(d);
        return false;
      }
      return true;
    }
    normalize(d);
    auto [it, inserted] = index_.try_emplace(d.c, rows_.size());
    if (inserted) {
      rows_.push_back(std::move(d));
      return true;
    }
    Derived& cur = rows_[it->second];
    if (d.cmp == Cmp::Eq || cur.cmp == Cmp::Eq) {
      rows_.push_back(std::move(d));
      return true;
    }
    if (d.k > cur.k || (d.k == cur.k && d.cmp == Cmp::Lt && cur.cmp == Cmp::Le)) cur = std::move(d);
    return true;
  }
  std::vector<Derived>& rows() { return rows_; }
  const std::optional<Derived>& conflict() const { return conflict_; }

private:
  std::vector<Derived> rows_;
  std::map<std::vector<Rational>, std::size_t> index_;
  std::optional<Derived> conflict_;
};

Rational pick(const std::optional<Bound>& lo, const std::optional<Bound>& hi) {
  if (lo && hi) return lo->value == hi->value ? lo->value : (lo->value + hi->value) / 2;
  if (lo) return lo->value + 1;
  if (hi) return hi->value - 1;
  return Rational(1);
}

// Tightest bounds on x_var from rows whose other variables are known.
void collect_bounds(const std::vector<Derived>& rows, std::size_t var, const std::vector<std::optional<Rational>>& x,
                    std::optional<Bound>& lo, std::optional<Bound>& hi) {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Derived& d = rows[r];
    const Rational& c = d.c[var];
    if (c.is_zero()) continue;
    Rational rest = d.k;
    for (std::size_t j = 0; j < d.c.size(); ++j)
      if (j != var && !d.c[j].is_zero()) rest += d.c[j] * x[j].value();
    Bound b{-rest / c, d.cmp == Cmp::Lt, r};
    if (c.sign() > 0) {
      if (!hi || b.value < hi->value || (b.value == hi->value && b.strict)) hi = b;
    } else {
      if (!lo || b.value > lo->value || (b.value == lo->value && b.strict)) lo = b;
    }
  }
}

class Solver {
public:
  Solver(std::span<const Row> rows, std::size_t n) : input_(rows), n_(n) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].coeffs.size() != n) throw std::invalid_argument("row width does not match variable count");
      Derived d{rows[r].coeffs, rows[r].constant, rows[r].cmp, {{r, Rational(1)}}};
      work_.push_back(std::move(d));
    }
  }

  Result run() {
    for (const auto& d : work_)
      if (d.is_constant() && d.is_false()) return infeasible(d);
    if (auto bad = substitute_equalities()) return infeasible(*bad);
    dehomogenize();
    for (const auto& d : work_)
      if (d.is_constant() && d.is_false()) return infeasible(d);
    std::erase_if(work_, [](const Derived& d) { return d.is_constant(); });

    std::vector<std::size_t> active;
    for (std::size_t j = 0; j < n_; ++j)
      if (!pivoted(j) && fixed_ != j) active.push_back(j);

    std::vector<Derived> rows = std::move(work_);
    // Highest index first; the lowest active variable is decided by bounds.
    while (active.size() > 1) {
      std::size_t var = active.back();
      active.pop_back();
      std::vector<Derived> pos, neg;
      RowSet next;
      for (auto& d : rows) {
        int s = d.c[var].sign();
        if (s > 0) pos.push_back(std::move(d));
        else if (s < 0) neg.push_back(std::move(d));
        else next.add(std::move(d));
      }
      for (const auto& p : pos) {
        for (const auto& q : neg) {
          if (!next.add(combine(p, -q.c[var], q, p.c[var]))) return infeasible(*next.conflict());
        }
      }
      std::vector<Derived> stage = std::move(pos);
      stage.insert(stage.end(), std::make_move_iterator(neg.begin()), std::make_move_iterator(neg.end()));
      stages_.push_back({var, std::move(stage)});
      rows = std::move(next.rows());
    }

    std::vector<std::optional<Rational>> x(n_);
    if (fixed_) x[*fixed_] = Rational(1);
    if (!active.empty()) {
      std::size_t var = active.front();
      std::optional<Bound> lo, hi;
      collect_bounds(rows, var, x, lo, hi);
      if (lo && hi && (lo->value > hi->value || (lo->value == hi->value && (lo->strict || hi->strict)))) {
        const Derived& a = rows[lo->row];
        const Derived& b = rows[hi->row];
        return infeasible(combine(a, Rational(1) / abs(a.c[var]), b, Rational(1) / abs(b.c[var])));
      }
      x[var] = pick(lo, hi);
    }
    for (auto it = stages_.rbegin(); it != stages_.rend(); ++it) {
      std::optional<Bound> lo, hi;
      collect_bounds(it->rows, it->var, x, lo, hi);
      x[it->var] = pick(lo, hi);
    }
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      const Derived& e = it->row;
      Rational rest = e.k;
      for (std::size_t j = 0; j < n_; ++j)
        if (j != it->var && !e.c[j].is_zero()) rest += e.c[j] * x[j].value();
      x[it->var] = -rest / e.c[it->var];
    }

    Result res;
    res.feasible = true;
    for (auto& v : x) res.witness.push_back(v.value_or(Rational(1)));
    for (const auto& row : input_)
      if (!satisfies(row, res.witness)) throw std::logic_error("Fourier-Motzkin witness fails substitution");
    return res;
  }

private:
  struct Pivot {
    std::size_t var;
    Derived row;
  };
  struct Stage {
    std::size_t var;
    std::vector<Derived> rows;
  };

  bool pivoted(std::size_t j) const {
    return std::any_of(pivots_.begin(), pivots_.end(), [&](const Pivot& p) { return p.var == j; });
  }

  std::optional<Derived> substitute_equalities() {
    for (;;) {
      auto it = std::find_if(work_.begin(), work_.end(),
                             [](const Derived& d) { return d.cmp == Cmp::Eq && !d.is_constant(); });
      if (it == work_.end()) break;
      Derived eq = std::move(*it);
      work_.erase(it);
      std::size_t var = n_;
      for (std::size_t j = n_; j-- > 0;)
        if (!eq.c[j].is_zero()) {
          var = j;
          break;
        }
      std::vector<Derived> next;
      next.reserve(work_.size());
      for (auto& d : work_) {
        if (d.c[var].is_zero()) {
          next.push_back(std::move(d));
          continue;
        }
        Derived s = combine(d, Rational(1), eq, -(d.c[var] / eq.c[var]));
        if (s.is_constant()) {
          if (s.is_false()) return s;
          continue;
        }
        next.push_back(std::move(s));
      }
      work_ = std::move(next);
      pivots_.push_back({var, std::move(eq)});
    }
    std::erase_if(work_, [](const Derived& d) { return d.is_constant(); });
    return std::nullopt;
  }

  void dehomogenize() {
    if (!std::all_of(input_.begin(), input_.end(), [](const Row& r) { return r.constant.is_zero(); })) return;
    if (!std::all_of(work_.begin(), work_.end(), [](const Derived& d) { return d.k.is_zero(); })) return;
    for (const auto& d : work_) {
      if (d.cmp != Cmp::Lt || d.nonzero_count() != 1) continue;
      std::size_t var = static_cast<std::size_t>(
          std::find_if(d.c.begin(), d.c.end(), [](const Rational& v) { return !v.is_zero(); }) - d.c.begin());
      if (d.c[var].sign() >= 0) continue;
      if (fixed_ && *fixed_ <= var) continue;
      fixed_ = var;
      positivity_ = d;
    }
    if (!fixed_) return;
    for (auto& d : work_) {
      d.k += d.c[*fixed_];
      d.c[*fixed_] = Rational(0);
    }
  }

  Result infeasible(const Derived& conflict) {
    std::map<std::size_t, Rational> origin = conflict.origin;
    if (fixed_) {
      // The conflict was derived with x_j = 1; in the original homogeneous
      // system it reads s * x_j cmp 0 with s > 0, cancelled by the positivity row.
      Rational s;
      for (const auto& [row, v] : origin) s += v * input_[row].coeffs[*fixed_];
      if (!s.is_zero()) {
        Rational w = s / abs(positivity_->c[*fixed_]);
        for (const auto& [row, v] : positivity_->origin) origin[row] += w * v;
        std::erase_if(origin, [](const auto& kv) { return kv.second.is_zero(); });
      }
    }
    Result res;
    res.feasible = false;
    res.certificate = to_certificate(origin);
    if (!certificate_valid(input_, res.certificate))
      throw std::logic_error("Fourier-Motzkin produced an invalid certificate");
    return res;
  }

  std::span<const Row> input_;
  std::size_t n_;
  std::vector<Derived> work_;
  std::vector<Pivot> pivots_;
  std::vector<Stage> stages_;
  std::optional<std::size_t> fixed_;
  std::optional<Derived> positivity_;
};

}  // namespace

Result solve(std::span<const Row> rows, std::size_t num_vars) { return Solver(rows, num_vars).run(); }

std::vector<Row> eliminate(std::span<const Row> rows, std::size_t num_vars, std::size_t var) {
  if (var >= num_vars) throw std::invalid_argument("variable index out of range");
  std::vector<Derived> pos, neg;
  RowSet out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    Derived d{rows[r].coeffs, rows[r].constant, rows[r].cmp, {}};
    int s = d.c[var].sign();
    if (s != 0 && d.cmp == Cmp::Eq) throw std::invalid_argument("eliminate: equality involves the variable");
    if (s > 0) pos.push_back(std::move(d));
    else if (s < 0) neg.push_back(std::move(d));
    else out.add(std::move(d));
  }
  std::vector<Row> result;
  for (const auto& p : pos)
    for (const auto& q : neg)
      if (!out.add(combine(p, -q.c[var], q, p.c[var]))) {
        const Derived& c = *out.conflict();
        return {Row{c.c, c.k, c.cmp}};
      }
  for (const auto& d : out.rows()) result.push_back(Row{d.c, d.k, d.cmp});
  return result;
}

bool implies(std::span<const Row> rows, std::size_t num_vars, const Row& row) {
  auto refuted = [&](Row negated) {
    std::vector<Row> sys(rows.begin(), rows.end());
    sys.push_back(std::move(negated));
    return !solve(sys, num_vars).feasible;
  };
  Row neg{row.coeffs, row.constant, Cmp::Le};
  for (auto& v : neg.coeffs) v = -v;
  neg.constant = -neg.constant;
  switch (row.cmp) {
    case Cmp::Lt: return refuted(neg);
    case Cmp::Le: neg.cmp = Cmp::Lt; return refuted(neg);
    case Cmp::Eq: {
      Row above{row.coeffs, row.constant, Cmp::Lt};
      neg.cmp = Cmp::Lt;
      return refuted(neg) && refuted(above);
    }
  }
  return false;
}

bool satisfies(const Row& row, std::span<const Rational> x) {
  Rational v = row.constant;
  for (std::size_t j = 0; j < row.coeffs.size(); ++j)
    if (!row.coeffs[j].is_zero()) v += row.coeffs[j] * x[j];
  switch (row.cmp) {
    case Cmp::Lt: return v.sign() < 0;
    case Cmp::Le: return v.sign() <= 0;
    case Cmp::Eq: return v.is_zero();
  }
  return false;
}

bool certificate_valid(std::span<const Row> rows, std::span<const Multiplier> certificate) {
  if (certificate.empty()) return false;
  const std::size_t n = rows.empty() ? 0 : rows.front().coeffs.size();
  std::vector<Rational> total(n);
  Rational constant;
  bool any_strict = false, any_ineq = false;
  for (const auto& m : certificate) {
    if (m.row >= rows.size()) return false;
    const Row& r = rows[m.row];
    if (r.cmp != Cmp::Eq) {
      if (m.value.sign() < 0) return false;
      if (m.value.sign() > 0) {
        any_ineq = true;
        any_strict = any_strict || r.cmp == Cmp::Lt;
      }
    }
    for (std::size_t j = 0; j < n; ++j) total[j] += m.value * r.coeffs[j];
    constant += m.value * r.constant;
  }
  if (!std::all_of(total.begin(), total.end(), [](const Rational& v) { return v.is_zero(); })) return false;
  if (!any_ineq) return !constant.is_zero();
  return any_strict ? constant.sign() >= 0 : constant.sign() > 0;
}

}  // namespace fm
}  // namespace lembed
