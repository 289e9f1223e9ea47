#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "kwpart/detail/fast_rational.hpp"
#include "kwpart/milp_model.hpp"
#include "kwpart/rational.hpp"

namespace kwpart {

enum class SolveStatus { Optimal, Infeasible, Unbounded, NodeLimit };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::NodeLimit: return "node-limit";
  }
  return "?";
}

enum class LpMethod {
  Auto,       ///< active set when the origin is feasible and rows outnumber columns
  Tableau,    ///< dense two-phase primal simplex over columns
  ActiveSet,  ///< primal simplex over tight rows; needs a feasible origin
};

inline const char* to_string(LpMethod m) {
  switch (m) {
    case LpMethod::Auto: return "auto";
    case LpMethod::Tableau: return "tableau";
    case LpMethod::ActiveSet: return "active-set";
  }
  return "?";
}

struct SimplexOptions {
  LpMethod method = LpMethod::Auto;
  /// Consecutive degenerate pivots tolerated under steepest-edge pricing
  /// before falling back to Bland's rule.
  std::size_t bland_after_degenerate = 1000;
  /// Solve log (pivot counts); null disables logging.
  std::ostream* log = nullptr;
};

struct LpSolution {
  SolveStatus status = SolveStatus::Infeasible;
  Rational objective;
  std::vector<Rational> values;  // indexed by VarId
  std::size_t pivots = 0;
  std::size_t bland_pivots = 0;

  bool optimal() const noexcept { return status == SolveStatus::Optimal; }
  const Rational& value(const MilpModel& m, const std::string& name) const {
    const auto id = m.find_variable(name);
    if (!id) throw ModelError("unknown variable `" + name + "`");
    return values[*id];
  }
};

namespace detail {

/// Dense two-phase primal simplex on  min c.x, Ax = b, x >= 0, b >= 0.
class Tableau {
 public:
  using Num = FastRational;
  enum class Outcome { Optimal, Unbounded };

  Tableau(std::size_t rows, std::size_t cols)
      : a_(rows, std::vector<Num>(cols)), b_(rows), d_(cols), basis_(rows, 0) {}

  Num& at(std::size_t i, std::size_t j) { return a_[i][j]; }
  Num& rhs(std::size_t i) { return b_[i]; }
  std::size_t& basic(std::size_t i) { return basis_[i]; }
  std::size_t row_count() const noexcept { return a_.size(); }
  std::size_t col_count() const noexcept { return d_.size(); }
  const Num& objective() const noexcept { return z_; }

  /// Resets reduced costs d = c - c_B B^-1 A and the objective value for cost vector c.
  void price(const std::vector<Num>& c) {
    d_ = c;
    z_ = Num(0);
    for (std::size_t i = 0; i < a_.size(); ++i) {
      const Num& cb = c[basis_[i]];
      if (cb.is_zero()) continue;
      for (std::size_t j = 0; j < d_.size(); ++j) {
        if (!a_[i][j].is_zero()) d_[j].sub_mul(cb, a_[i][j]);
      }
      z_.sub_mul(kMinusOne, mul(cb, b_[i]));
    }
  }

  Outcome run(const SimplexOptions& options, std::size_t& pivots, std::size_t& bland_pivots) {
    std::size_t degenerate_run = 0;
    for (;;) {
      const bool bland = degenerate_run >= options.bland_after_degenerate;
      const auto q = entering(bland);
      if (!q) return Outcome::Optimal;
      const auto r = leaving(*q);
      if (!r) return Outcome::Unbounded;
      if (b_[*r].is_zero()) {
        ++degenerate_run;
      } else {
        degenerate_run = 0;
      }
      if (bland) ++bland_pivots;
      pivot(*r, *q);
      ++pivots;
    }
  }

  void pivot(std::size_t r, std::size_t q) {
    std::vector<Num>& prow = a_[r];
    if (!prow[q].is_one()) {
      const Num inv = prow[q].reciprocal();
      for (auto& v : prow) {
        if (!v.is_zero()) v.mul(inv);
      }
      b_[r].mul(inv);
    }
    nz_.clear();
    for (std::size_t j = 0; j < prow.size(); ++j) {
      if (!prow[j].is_zero()) nz_.push_back(j);
    }
    Num f;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (i == r || a_[i][q].is_zero()) continue;
      f = a_[i][q];
      std::vector<Num>& row = a_[i];
      for (const auto j : nz_) row[j].sub_mul(f, prow[j]);
      b_[i].sub_mul(f, b_[r]);
    }
    if (!d_[q].is_zero()) {
      f = d_[q];
      z_.sub_mul(kMinusOne, mul(f, b_[r]));
      for (const auto j : nz_) d_[j].sub_mul(f, prow[j]);
    }
    basis_[r] = q;
  }

  /// Keeps the first `cols` columns.
  void truncate_columns(std::size_t cols) {
    for (auto& row : a_) row.resize(cols);
    d_.resize(cols);
  }

  void erase_row(std::size_t i) {
    a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(i));
    b_.erase(b_.begin() + static_cast<std::ptrdiff_t>(i));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
  }

  std::vector<Rational> primal(std::size_t cols) const {
    std::vector<Rational> x(cols);
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (basis_[i] < cols) x[basis_[i]] = b_[i].to_rational();
    }
    return x;
  }

 private:
  inline static const Num kMinusOne{-1};

  static Num mul(const Num& a, const Num& b) {
    Num out = a;
    out.mul(b);
    return out;
  }

  // Steepest edge (d_j^2 / (1 + |A_j|^2)) or Bland's smallest index.
  std::optional<std::size_t> entering(bool bland) const {
    std::optional<std::size_t> best;
    Num best_score;
    for (std::size_t j = 0; j < d_.size(); ++j) {
      if (d_[j].sign() >= 0) continue;
      if (bland) return j;
      Num norm(1);
      for (const auto& row : a_) {
        if (!row[j].is_zero()) norm.sub_mul(row[j], -row[j]);
      }
      Num score = mul(d_[j], d_[j]) / norm;
      if (!best || best_score < score) {
        best = j;
        best_score = std::move(score);
      }
    }
    return best;
  }

  // Minimum ratio; ties go to the smallest basic column index.
  std::optional<std::size_t> leaving(std::size_t q) const {
    std::optional<std::size_t> best;
    Num best_ratio;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (a_[i][q].sign() <= 0) continue;
      Num ratio = b_[i] / a_[i][q];
      if (!best || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*best])) {
        best = i;
        best_ratio = std::move(ratio);
      }
    }
    return best;
  }

  std::vector<std::vector<Num>> a_;
  std::vector<Num> b_;
  std::vector<Num> d_;
  Num z_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> nz_;
};

// Model variable v equals shift + x[pos] - x[neg] (absent columns contribute 0).
struct ColumnMap {
  Rational shift;
  std::optional<std::size_t> pos;
  std::optional<std::size_t> neg;
};

inline LpSolution solve_tableau(const MilpModel& m, const SimplexOptions& options) {
  const auto& vars = m.variables();
  std::vector<ColumnMap> map(vars.size());
  std::size_t structural = 0;

  struct Constraint {
    LinearExpr terms;  // over tableau columns
    RowRelation relation;
    Rational rhs;
  };
  std::vector<Constraint> constraints;

  for (std::size_t v = 0; v < vars.size(); ++v) {
    const auto& var = vars[v];
    if (var.lower) {
      map[v].shift = *var.lower;
      map[v].pos = structural++;
      if (var.upper) {
        if (*var.upper < *var.lower) {
          LpSolution infeasible;
          infeasible.status = SolveStatus::Infeasible;
          return infeasible;
        }
        constraints.push_back({{{*map[v].pos, Rational(1)}}, RowRelation::LessEqual, *var.upper - *var.lower});
      }
    } else if (var.upper) {
      map[v].shift = *var.upper;
      map[v].neg = structural++;
    } else {
      map[v].pos = structural++;
      map[v].neg = structural++;
    }
  }
  for (const auto& row : m.rows()) {
    Constraint c{{}, row.relation, row.rhs};
    for (const auto& [v, coef] : row.coefficients) {
      c.rhs -= coef * map[v].shift;
      if (map[v].pos) c.terms[*map[v].pos] += coef;
      if (map[v].neg) c.terms[*map[v].neg] -= coef;
    }
    constraints.push_back(std::move(c));
  }
  // Normalize to rhs >= 0; a `>= 0` row becomes `<= 0` so its slack can start basic.
  std::size_t slack_count = 0;
  std::size_t artificial_count = 0;
  for (auto& c : constraints) {
    if (sgn(c.rhs) < 0 || (sgn(c.rhs) == 0 && c.relation == RowRelation::GreaterEqual)) {
      for (auto& [j, coef] : c.terms) coef = -coef;
      c.rhs = -c.rhs;
      c.relation = flipped(c.relation);
    }
    if (c.relation != RowRelation::Equal) ++slack_count;
    if (c.relation != RowRelation::LessEqual) ++artificial_count;
  }

  const std::size_t first_slack = structural;
  const std::size_t first_artificial = structural + slack_count;
  const std::size_t total = first_artificial + artificial_count;
  detail::Tableau tab(constraints.size(), total);
  std::size_t next_slack = first_slack;
  std::size_t next_art = first_artificial;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const auto& c = constraints[i];
    for (const auto& [j, coef] : c.terms) tab.at(i, j) = detail::FastRational(coef);
    tab.rhs(i) = detail::FastRational(c.rhs);
    if (c.relation == RowRelation::LessEqual) {
      tab.at(i, next_slack) = 1;
      tab.basic(i) = next_slack++;
    } else {
      if (c.relation == RowRelation::GreaterEqual) tab.at(i, next_slack++) = -1;
      tab.at(i, next_art) = 1;
      tab.basic(i) = next_art++;
    }
  }

  LpSolution out;
  if (artificial_count > 0) {
    std::vector<detail::FastRational> phase1(total);
    for (std::size_t j = first_artificial; j < total; ++j) phase1[j] = 1;
    tab.price(phase1);
    tab.run(options, out.pivots, out.bland_pivots);
    if (tab.objective().sign() > 0) {
      out.status = SolveStatus::Infeasible;
      if (options.log) *options.log << "simplex: infeasible after " << out.pivots << " phase-1 pivots\n";
      return out;
    }
    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (std::size_t i = tab.row_count(); i-- > 0;) {
      if (tab.basic(i) < first_artificial) continue;
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < first_artificial; ++j) {
        if (!tab.at(i, j).is_zero()) {
          col = j;
          break;
        }
      }
      if (col) {
        tab.pivot(i, *col);
        ++out.pivots;
      } else {
        tab.erase_row(i);
      }
    }
    tab.truncate_columns(first_artificial);
    if (options.log) *options.log << "simplex: phase 1 done after " << out.pivots << " pivots\n";
  }

  std::vector<Rational> cost(first_artificial);
  for (const auto& [v, coef] : m.objective()) {
    const Rational c = m.sense() == Sense::Minimize ? coef : Rational(-coef);
    if (map[v].pos) cost[*map[v].pos] += c;
    if (map[v].neg) cost[*map[v].neg] -= c;
  }
  std::vector<detail::FastRational> fast_cost;
  fast_cost.reserve(cost.size());
  for (const auto& c : cost) fast_cost.emplace_back(c);
  tab.price(fast_cost);
  if (tab.run(options, out.pivots, out.bland_pivots) == detail::Tableau::Outcome::Unbounded) {
    out.status = SolveStatus::Unbounded;
    if (options.log) *options.log << "simplex: unbounded after " << out.pivots << " pivots\n";
    return out;
  }

  const auto x = tab.primal(structural);
  out.values.resize(vars.size());
  for (std::size_t v = 0; v < vars.size(); ++v) {
    Rational value = map[v].shift;
    if (map[v].pos) value += x[*map[v].pos];
    if (map[v].neg) value -= x[*map[v].neg];
    out.values[v] = value;
  }
  out.status = SolveStatus::Optimal;
  out.objective = m.evaluate_objective(out.values);
  if (options.log) {
    *options.log << "simplex: optimal " << out.objective.get_str() << " after " << out.pivots << " pivots ("
                 << out.bland_pivots << " under Bland's rule)\n";
  }
  return out;
}

/// max c.u subject to a_i.u <= b_i with b >= 0, so u = 0 is feasible. Each
/// variable is shifted to its lower bound (or upper, if it has only that);
/// bounds become rows.
struct ActiveSetProblem {
  struct Row {
    std::vector<std::pair<std::size_t, FastRational>> terms;
    FastRational rhs;
  };
  std::vector<Row> rows;
  std::vector<std::pair<std::size_t, FastRational>> cost;
  std::vector<Rational> shift;
  std::vector<std::optional<std::size_t>> bound_row;  // row pinning u_j = 0 at the start
  std::vector<FastRational> bound_sign;

  static std::optional<ActiveSetProblem> build(const MilpModel& m) {
    const auto& vars = m.variables();
    ActiveSetProblem p;
    p.shift.resize(vars.size());
    p.bound_row.resize(vars.size());
    p.bound_sign.resize(vars.size());
    for (std::size_t j = 0; j < vars.size(); ++j) {
      const auto& var = vars[j];
      if (var.lower) {
        p.shift[j] = *var.lower;
        if (var.upper && *var.upper < *var.lower) return std::nullopt;
        p.bound_row[j] = p.rows.size();
        p.bound_sign[j] = -1;
        p.rows.push_back({{{j, FastRational(-1)}}, FastRational(0)});
        if (var.upper) p.rows.push_back({{{j, FastRational(1)}}, FastRational(Rational(*var.upper - *var.lower))});
      } else if (var.upper) {
        p.shift[j] = *var.upper;
        p.bound_row[j] = p.rows.size();
        p.bound_sign[j] = 1;
        p.rows.push_back({{{j, FastRational(1)}}, FastRational(0)});
      }
    }
    for (const auto& row : m.rows()) {
      Rational rhs = row.rhs;
      for (const auto& [v, coef] : row.coefficients) rhs -= coef * p.shift[v];
      auto emit = [&](int sign) -> bool {
        const Rational b = sign * rhs;
        if (sgn(b) < 0) return false;
        Row r{{}, FastRational(b)};
        for (const auto& [v, coef] : row.coefficients) r.terms.emplace_back(v, FastRational(Rational(sign * coef)));
        p.rows.push_back(std::move(r));
        return true;
      };
      const bool ok = row.relation == RowRelation::LessEqual      ? emit(1)
                      : row.relation == RowRelation::GreaterEqual ? emit(-1)
                                                                  : emit(1) && emit(-1);
      if (!ok) return std::nullopt;
    }
    for (const auto& [v, coef] : m.objective()) {
      p.cost.emplace_back(v, FastRational(m.sense() == Sense::Maximize ? coef : Rational(-coef)));
    }
    return p;
  }
};

/// Primal simplex whose basis is a set of n tight rows. Free variables start
/// pinned by virtual rows u_j = 0 that may be released in either direction
/// and are never re-entered. Keeps the inverse of the tight-row matrix by
/// columns, so one pivot costs O(n^2 + nnz(A)).
inline LpSolution solve_active_set(const MilpModel& m, const ActiveSetProblem& p, const SimplexOptions& options) {
  using Num = FastRational;
  const std::size_t n = m.variables().size();
  const std::size_t rows = p.rows.size();
  const std::size_t virtual_base = rows;  // active id >= rows: virtual row of variable id - rows
  constexpr std::size_t kInactive = std::numeric_limits<std::size_t>::max();

  std::vector<std::vector<Num>> inv(n, std::vector<Num>(n));  // inv[k] = column k
  std::vector<std::size_t> active(n);
  std::vector<std::size_t> position(rows, kInactive);
  for (std::size_t j = 0; j < n; ++j) {
    if (p.bound_row[j]) {
      active[j] = *p.bound_row[j];
      position[*p.bound_row[j]] = j;
      inv[j][j] = p.bound_sign[j];
    } else {
      active[j] = virtual_base + j;
      inv[j][j] = 1;
    }
  }
  std::vector<Num> u(n);
  std::vector<Num> slack;
  slack.reserve(rows);
  for (const auto& r : p.rows) slack.push_back(r.rhs);

  LpSolution out;
  std::vector<Num> lambda(n);
  std::vector<Num> score(n);
  std::vector<Num> rate(rows);
  std::vector<Num> w(n);
  std::size_t degenerate_run = 0;
  for (;;) {
    const bool bland = degenerate_run >= options.bland_after_degenerate;
    for (std::size_t k = 0; k < n; ++k) {
      lambda[k] = 0;
      for (const auto& [j, c] : p.cost) {
        if (!inv[k][j].is_zero()) lambda[k].sub_mul(c, -inv[k][j]);
      }
    }
    if (!bland) {
      // Steepest edge: lambda_k^2 / |d_k|^2.
      for (std::size_t q = 0; q < n; ++q) {
        if (lambda[q].is_zero()) continue;
        Num norm;
        for (const auto& v : inv[q]) {
          if (!v.is_zero()) norm.sub_mul(v, -v);
        }
        Num l2 = lambda[q];
        l2.mul(lambda[q]);
        score[q] = l2 / norm;
      }
    }
    // Released position: a real row with a negative multiplier, or a virtual
    // row with a non-zero one.
    std::optional<std::size_t> k;
    for (std::size_t q = 0; q < n; ++q) {
      const int s = lambda[q].sign();
      const bool is_virtual = active[q] >= virtual_base;
      if (s == 0 || (s > 0 && !is_virtual)) continue;
      if (!k) {
        k = q;
        continue;
      }
      if (bland) {
        if (active[q] < active[*k]) k = q;
      } else {
        if (score[*k] < score[q] || (score[q] == score[*k] && active[q] < active[*k])) k = q;
      }
    }
    if (!k) break;
    const bool released_virtual = active[*k] >= virtual_base;
    const int sigma = released_virtual ? lambda[*k].sign() : -1;
    const std::vector<Num>& dir = inv[*k];  // d = sigma * dir

    std::optional<std::size_t> enter;
    Num best;
    for (std::size_t i = 0; i < rows; ++i) {
      rate[i] = 0;
      for (const auto& [j, a] : p.rows[i].terms) {
        if (!dir[j].is_zero()) rate[i].sub_mul(a, -dir[j]);
      }
      if (sigma < 0) rate[i] = -rate[i];
      if (position[i] != kInactive || rate[i].sign() <= 0) continue;
      Num ratio = slack[i] / rate[i];
      if (!enter || ratio < best) {
        enter = i;
        best = std::move(ratio);
      }
    }
    if (!enter) {
      out.status = SolveStatus::Unbounded;
      if (options.log) *options.log << "active-set simplex: unbounded after " << out.pivots << " pivots\n";
      return out;
    }
    if (best.is_zero()) {
      ++degenerate_run;
    } else {
      degenerate_run = 0;
      const Num step_d = sigma < 0 ? -best : best;
      for (std::size_t j = 0; j < n; ++j) {
        if (!dir[j].is_zero()) u[j].sub_mul(step_d, -dir[j]);
      }
      for (std::size_t i = 0; i < rows; ++i) {
        if (!rate[i].is_zero()) slack[i].sub_mul(best, rate[i]);
      }
    }
    if (bland) ++out.bland_pivots;
    ++out.pivots;

    // Replace the released row by the entering one: column k /= w_k, then
    // column l -= w_l * column k.
    const auto& terms = p.rows[*enter].terms;
    for (std::size_t l = 0; l < n; ++l) {
      w[l] = 0;
      for (const auto& [j, a] : terms) {
        if (!inv[l][j].is_zero()) w[l].sub_mul(a, -inv[l][j]);
      }
    }
    const Num scale = w[*k].reciprocal();
    for (auto& v : inv[*k]) {
      if (!v.is_zero()) v.mul(scale);
    }
    const std::vector<Num>& pivot_col = inv[*k];
    for (std::size_t l = 0; l < n; ++l) {
      if (l == *k || w[l].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!pivot_col[j].is_zero()) inv[l][j].sub_mul(w[l], pivot_col[j]);
      }
    }
    if (!released_virtual) position[active[*k]] = kInactive;
    position[*enter] = *k;
    active[*k] = *enter;
  }

  out.values.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.values[j] = p.shift[j] + u[j].to_rational();
  out.status = SolveStatus::Optimal;
  out.objective = m.evaluate_objective(out.values);
  if (options.log) {
    *options.log << "active-set simplex: optimal " << out.objective.get_str() << " after " << out.pivots
                 << " pivots (" << out.bland_pivots << " under Bland's rule)\n";
  }
  return out;
}

}  // namespace detail

/// Exact LP optimum over the rationals. Integrality flags are ignored.
inline LpSolution solve_lp(const MilpModel& m, const SimplexOptions& options = {}) {
  if (options.method == LpMethod::Tableau) return detail::solve_tableau(m, options);
  if (options.method == LpMethod::ActiveSet) {
    auto problem = detail::ActiveSetProblem::build(m);
    if (!problem) throw ModelError("active-set simplex needs the origin (after bound shifts) to be feasible");
    return detail::solve_active_set(m, *problem, options);
  }
  if (m.rows().size() > m.variables().size()) {
    if (auto problem = detail::ActiveSetProblem::build(m)) return detail::solve_active_set(m, *problem, options);
  }
  return detail::solve_tableau(m, options);
}

struct IpOptions {
  SimplexOptions lp;
  std::size_t node_limit = 1'000'000;
};

struct IpSolution {
  SolveStatus status = SolveStatus::Infeasible;
  Rational objective;
  std::vector<Rational> values;
  std::size_t node_count = 0;
  std::optional<Rational> root_bound;  // LP relaxation optimum at the root node

  bool optimal() const noexcept { return status == SolveStatus::Optimal; }
};

/// Depth-first branch and bound over the LP relaxation. Branches on the
/// fractional integer variable with the largest denominator (ties: lowest
/// VarId) and prunes nodes whose bound cannot beat the incumbent.
inline IpSolution solve_ip(const MilpModel& m, const IpOptions& options = {}) {
  const bool minimize = m.sense() == Sense::Minimize;
  auto better = [&](const Rational& a, const Rational& b) { return minimize ? a < b : a > b; };

  struct Node {
    std::vector<Variable> bounds;
  };
  MilpModel work = m;
  std::vector<Node> stack{{m.variables()}};
  IpSolution best;
  bool have_incumbent = false;
  bool unbounded_relaxation = false;

  while (!stack.empty()) {
    if (best.node_count >= options.node_limit) {
      best.status = SolveStatus::NodeLimit;
      return best;
    }
    Node node = std::move(stack.back());
    stack.pop_back();
    work.variables() = node.bounds;
    const LpSolution lp = solve_lp(work, options.lp);
    ++best.node_count;
    if (best.node_count == 1 && lp.optimal()) best.root_bound = lp.objective;
    if (lp.status == SolveStatus::Unbounded) {
      unbounded_relaxation = true;
      if (best.node_count == 1) break;
      continue;
    }
    if (!lp.optimal()) continue;
    if (have_incumbent && !better(lp.objective, best.objective)) continue;

    std::optional<VarId> branch;
    for (VarId v = 0; v < node.bounds.size(); ++v) {
      if (!node.bounds[v].integer || is_integral(lp.values[v])) continue;
      if (!branch || lp.values[v].get_den() > lp.values[*branch].get_den()) branch = v;
    }
    if (!branch) {
      best.objective = lp.objective;
      best.values = lp.values;
      have_incumbent = true;
      continue;
    }
    const Rational& frac = lp.values[*branch];
    Node down{node.bounds};
    down.bounds[*branch].upper = Rational(floor(frac));
    Node up{std::move(node.bounds)};
    up.bounds[*branch].lower = Rational(ceil(frac));
    stack.push_back(std::move(up));
    stack.push_back(std::move(down));
  }
  if (options.lp.log) *options.lp.log << "branch-and-bound: " << best.node_count << " nodes\n";
  if (have_incumbent) {
    best.status = SolveStatus::Optimal;
  } else if (unbounded_relaxation) {
    best.status = SolveStatus::Unbounded;
  } else {
    best.status = SolveStatus::Infeasible;
  }
  return best;
}

struct SolutionCheck {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Re-evaluates every bound, integrality flag and row of m at `values`,
/// straight from the model (no tableau state involved).
inline SolutionCheck verify_solution(const MilpModel& m, const std::vector<Rational>& values,
                                     bool check_integrality = true) {
  SolutionCheck check;
  auto fail = [&](std::string what) {
    check.ok = false;
    check.violations.push_back(std::move(what));
  };
  if (values.size() != m.variables().size()) {
    fail("assignment has " + std::to_string(values.size()) + " values for " +
         std::to_string(m.variables().size()) + " variables");
    return check;
  }
  for (VarId v = 0; v < values.size(); ++v) {
    const auto& var = m.variables()[v];
    if (var.lower && values[v] < *var.lower) fail("bound: " + var.name + " = " + values[v].get_str() + " below lower");
    if (var.upper && values[v] > *var.upper) fail("bound: " + var.name + " = " + values[v].get_str() + " above upper");
    if (check_integrality && var.integer && !is_integral(values[v])) {
      fail("integrality: " + var.name + " = " + values[v].get_str());
    }
  }
  for (const auto& row : m.rows()) {
    Rational lhs = 0;
    for (const auto& [v, c] : row.coefficients) lhs += c * values[v];
    const bool holds = row.relation == RowRelation::Equal       ? lhs == row.rhs
                       : row.relation == RowRelation::LessEqual ? lhs <= row.rhs
                                                                : lhs >= row.rhs;
    if (!holds) {
      fail("row " + row.name + ": " + lhs.get_str() + " " + to_string(row.relation) + " " + row.rhs.get_str() +
           " fails");
    }
  }
  return check;
}

}  // namespace kwpart
