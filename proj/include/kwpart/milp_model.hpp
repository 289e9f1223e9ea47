#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "kwpart/error.hpp"
#include "kwpart/rational.hpp"

namespace kwpart {

enum class Sense { Minimize, Maximize };
enum class RowRelation { LessEqual, GreaterEqual, Equal };

inline const char* to_string(RowRelation r) {
  switch (r) {
    case RowRelation::LessEqual: return "<=";
    case RowRelation::GreaterEqual: return ">=";
    case RowRelation::Equal: return "=";
  }
  return "?";
}

inline RowRelation flipped(RowRelation r) {
  switch (r) {
    case RowRelation::LessEqual: return RowRelation::GreaterEqual;
    case RowRelation::GreaterEqual: return RowRelation::LessEqual;
    case RowRelation::Equal: return RowRelation::Equal;
  }
  return r;
}

using VarId = std::size_t;
using LinearExpr = std::map<VarId, Rational>;

struct Variable {
  std::string name;
  std::optional<Rational> lower = Rational(0);  // nullopt = -inf
  std::optional<Rational> upper;                // nullopt = +inf
  bool integer = false;

  bool is_free() const { return !lower && !upper; }
  bool is_nonnegative() const { return lower && *lower == 0 && !upper; }
};

struct Row {
  std::string name;
  LinearExpr coefficients;
  RowRelation relation = RowRelation::Equal;
  Rational rhs;
};

/// Sparse exact-rational LP/IP. Variable and row names are unique.
class MilpModel {
 public:
  MilpModel() = default;
  explicit MilpModel(std::string name, Sense sense = Sense::Minimize)
      : name_(std::move(name)), sense_(sense) {}

  VarId add_variable(std::string name, std::optional<Rational> lower = Rational(0),
                     std::optional<Rational> upper = std::nullopt, bool integer = false) {
    if (var_index_.count(name) != 0) throw ModelError("duplicate variable `" + name + "`");
    const VarId id = variables_.size();
    var_index_.emplace(name, id);
    variables_.push_back({std::move(name), std::move(lower), std::move(upper), integer});
    return id;
  }

  std::size_t add_row(std::string name, LinearExpr coefficients, RowRelation relation, Rational rhs) {
    if (row_index_.count(name) != 0) throw ModelError("duplicate row `" + name + "`");
    for (auto it = coefficients.begin(); it != coefficients.end();) {
      if (it->first >= variables_.size()) {
        throw ModelError("row `" + name + "` references undeclared variable " + std::to_string(it->first));
      }
      it = it->second == 0 ? coefficients.erase(it) : std::next(it);
    }
    const std::size_t id = rows_.size();
    row_index_.emplace(name, id);
    rows_.push_back({std::move(name), std::move(coefficients), relation, std::move(rhs)});
    return id;
  }

  void set_objective(LinearExpr objective) {
    for (auto it = objective.begin(); it != objective.end();) {
      if (it->first >= variables_.size()) throw ModelError("objective references undeclared variable");
      it = it->second == 0 ? objective.erase(it) : std::next(it);
    }
    objective_ = std::move(objective);
  }

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  Sense sense() const noexcept { return sense_; }
  void set_sense(Sense s) noexcept { sense_ = s; }

  const std::vector<Variable>& variables() const noexcept { return variables_; }
  std::vector<Variable>& variables() noexcept { return variables_; }
  const std::vector<Row>& rows() const noexcept { return rows_; }
  const LinearExpr& objective() const noexcept { return objective_; }

  std::optional<VarId> find_variable(const std::string& name) const {
    const auto it = var_index_.find(name);
    if (it == var_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::size_t> find_row(const std::string& name) const {
    const auto it = row_index_.find(name);
    if (it == row_index_.end()) return std::nullopt;
    return it->second;
  }

  bool has_integers() const {
    for (const auto& v : variables_) {
      if (v.integer) return true;
    }
    return false;
  }

  Rational evaluate_objective(const std::vector<Rational>& values) const {
    Rational z = 0;
    for (const auto& [v, c] : objective_) z += c * values[v];
    return z;
  }

  friend bool operator==(const MilpModel& a, const MilpModel& b) {
    if (a.sense_ != b.sense_ || a.objective_ != b.objective_) return false;
    if (a.variables_.size() != b.variables_.size() || a.rows_.size() != b.rows_.size()) return false;
    for (std::size_t i = 0; i < a.variables_.size(); ++i) {
      const auto& x = a.variables_[i];
      const auto& y = b.variables_[i];
      if (x.name != y.name || x.lower != y.lower || x.upper != y.upper || x.integer != y.integer) return false;
    }
    for (std::size_t i = 0; i < a.rows_.size(); ++i) {
      const auto& x = a.rows_[i];
      const auto& y = b.rows_[i];
      if (x.name != y.name || x.coefficients != y.coefficients || x.relation != y.relation || x.rhs != y.rhs) {
        return false;
      }
    }
    return true;
  }

 private:
  std::string name_;
  Sense sense_ = Sense::Minimize;
  std::vector<Variable> variables_;
  std::vector<Row> rows_;
  LinearExpr objective_;
  std::unordered_map<std::string, VarId> var_index_;
  std::unordered_map<std::string, std::size_t> row_index_;
};

/// Same model with every integrality flag cleared.
inline MilpModel relax(const MilpModel& m) {
  MilpModel out = m;
  for (auto& v : out.variables()) v.integer = false;
  return out;
}

/// Prefix given to dual variable and dual row names.
inline constexpr const char* kDualPrefix = "d_";

/// LP dual for the two shapes the workbench produces:
///   min c.x  s.t. Ax = b, x >= 0   <->   max b.u  s.t. A^T u <= c, u free.
/// The dual variable of row `r` is `d_r`, the dual row of variable `v` is `d_v`.
inline MilpModel dualize(const MilpModel& m) {
  if (m.has_integers()) throw ModelError("dualize: model has integer variables; relax it first");
  const bool min_form = m.sense() == Sense::Minimize;
  for (const auto& v : m.variables()) {
    if (min_form ? !v.is_nonnegative() : !v.is_free()) {
      throw ModelError(std::string("dualize: variable `") + v.name + "` must be " +
                       (min_form ? "non-negative" : "free") + " in a " + (min_form ? "min" : "max") + " model");
    }
  }
  const RowRelation want = min_form ? RowRelation::Equal : RowRelation::LessEqual;
  for (const auto& r : m.rows()) {
    if (r.relation != want) {
      throw ModelError("dualize: row `" + r.name + "` must be `" + to_string(want) + "`");
    }
  }

  MilpModel dual(kDualPrefix + m.name(), min_form ? Sense::Maximize : Sense::Minimize);
  for (const auto& r : m.rows()) {
    if (min_form) {
      dual.add_variable(kDualPrefix + r.name, std::nullopt, std::nullopt);
    } else {
      dual.add_variable(kDualPrefix + r.name, Rational(0), std::nullopt);
    }
  }
  LinearExpr objective;
  for (std::size_t i = 0; i < m.rows().size(); ++i) objective[i] = m.rows()[i].rhs;
  dual.set_objective(std::move(objective));

  std::vector<LinearExpr> columns(m.variables().size());
  for (std::size_t i = 0; i < m.rows().size(); ++i) {
    for (const auto& [v, a] : m.rows()[i].coefficients) columns[v][i] = a;
  }
  for (VarId v = 0; v < m.variables().size(); ++v) {
    const auto it = m.objective().find(v);
    const Rational cost = it == m.objective().end() ? Rational(0) : it->second;
    dual.add_row(kDualPrefix + m.variables()[v].name, std::move(columns[v]),
                 min_form ? RowRelation::LessEqual : RowRelation::Equal, cost);
  }
  return dual;
}

}  // namespace kwpart
