#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kwpart/milp_model.hpp"
#include "kwpart/relation.hpp"

namespace kwpart {

using GammaKey = std::pair<Rectangle, Partition>;

namespace names {

inline std::string cell(int i, int j) { return std::to_string(i) + "_" + std::to_string(j); }
inline std::string x(const Rectangle& r) { return "x[" + encode(r) + "]"; }
inline std::string y(const Rectangle& r, const Partition& p) { return "y[" + encode(r) + "|" + encode(p) + "]"; }
inline std::string cover(int i, int j) { return "cover[" + cell(i, j) + "]"; }
inline std::string balance(const Rectangle& r) { return "balance[" + encode(r) + "]"; }
inline std::string phi(int i, int j) { return "phi[" + cell(i, j) + "]"; }
inline std::string nu(const Rectangle& r) { return "nu[" + encode(r) + "]"; }
inline std::string psi(int i, int j, const Rectangle& r) { return "psi[" + cell(i, j) + "|" + encode(r) + "]"; }
inline std::string mono(const Rectangle& r) { return "mono[" + encode(r) + "]"; }
inline std::string part(const Rectangle& r, const Partition& p) { return "part[" + encode(r) + "|" + encode(p) + "]"; }

}  // namespace names

/// Index sets shared by both formulations, in canonical order.
struct RectangleSets {
  std::vector<Rectangle> all;         // R(T)
  std::vector<Rectangle> monochromatic;  // M(T)
  std::vector<GammaKey> gamma;        // {(R, P) : P in P(R)}
  std::vector<Rectangle> star;        // R(T) \ {C_T}

  static RectangleSets of(const Relation& t, std::uint64_t limit = kDefaultRectangleLimit) {
    RectangleSets s;
    s.all = enumerate_rectangles(t, limit);
    const auto colors = common_color_table(t, limit);
    const Rectangle whole = t.full();
    for (const auto& r : s.all) {
      if (colors[r] != 0) s.monochromatic.push_back(r);
      if (r != whole) s.star.push_back(r);
      for (const auto& p : enumerate_partitions(r)) s.gamma.emplace_back(r, p);
    }
    return s;
  }
};

struct PnInstance {
  MilpModel model;
  RectangleSets sets;
  std::map<Rectangle, VarId> x;
  std::map<GammaKey, VarId> y;
};

/// Integer program: minimize sum x[R] over monochromatic R subject to
///   cover[c]:   sum_{R mono, c in R} x[R] = 1                      for every cell c
///   balance[R]: sum_{(V,P): R in P} y[V|P] - sum_{P in P(R)} y[R|P]
///               - x[R] (when R is monochromatic) = 0               for every R != C_T
inline PnInstance build_pn(const Relation& t, std::uint64_t limit = kDefaultRectangleLimit) {
  PnInstance pn{MilpModel("PN", Sense::Minimize), RectangleSets::of(t, limit), {}, {}};
  auto& m = pn.model;
  LinearExpr objective;
  for (const auto& r : pn.sets.monochromatic) {
    const VarId v = m.add_variable(names::x(r), Rational(0), std::nullopt, true);
    pn.x.emplace(r, v);
    objective[v] = 1;
  }
  for (const auto& key : pn.sets.gamma) {
    pn.y.emplace(key, m.add_variable(names::y(key.first, key.second), Rational(0), std::nullopt, true));
  }
  m.set_objective(std::move(objective));

  for (int i = 0; i < t.row_count(); ++i) {
    for (int j = 0; j < t.col_count(); ++j) {
      LinearExpr row;
      for (const auto& r : pn.sets.monochromatic) {
        if (r.contains(i, j)) row[pn.x.at(r)] = 1;
      }
      m.add_row(names::cover(i, j), std::move(row), RowRelation::Equal, Rational(1));
    }
  }

  std::map<Rectangle, LinearExpr> balance;
  for (const auto& [key, v] : pn.y) {
    const auto& [r, p] = key;
    balance[p.first][v] += 1;
    balance[p.second][v] += 1;
    balance[r][v] -= 1;
  }
  for (const auto& [r, v] : pn.x) balance[r][v] -= 1;
  for (const auto& r : pn.sets.star) {
    m.add_row(names::balance(r), std::move(balance[r]), RowRelation::Equal, Rational(0));
  }
  return pn;
}

struct QaInstance {
  MilpModel model;
  RectangleSets sets;
  bool raw_psi = false;
};

/// Quasi-additive linear program. In the default aggregated form nu[R] stands
/// for sum_{c not in R} psi[c|R] and nu[C_T] is identically 0:
///   maximize sum phi[c]
///   mono[R]:   sum_{c in R} phi[c] + nu[R] <= 1     for R monochromatic
///   part[R|P]: nu[V] + nu[W] - nu[R] >= 0           for P = {V, W} in P(R)
/// With raw_psi, every psi[c|R] (c outside R) is its own free variable.
inline QaInstance build_qa(const Relation& t, bool raw_psi = false,
                           std::uint64_t limit = kDefaultRectangleLimit) {
  QaInstance qa{MilpModel(raw_psi ? "LP-raw-psi" : "LP", Sense::Maximize), RectangleSets::of(t, limit), raw_psi};
  auto& m = qa.model;
  const Rectangle whole = t.full();
  std::vector<VarId> phi;
  LinearExpr objective;
  for (int i = 0; i < t.row_count(); ++i) {
    for (int j = 0; j < t.col_count(); ++j) {
      const VarId v = m.add_variable(names::phi(i, j), std::nullopt, std::nullopt);
      phi.push_back(v);
      objective[v] = 1;
    }
  }
  m.set_objective(std::move(objective));

  // weight[R]: the linear form standing for sum_{c not in R} psi[c|R]
  std::map<Rectangle, LinearExpr> weight;
  for (const auto& r : qa.sets.all) {
    if (raw_psi) {
      for (int i = 0; i < t.row_count(); ++i) {
        for (int j = 0; j < t.col_count(); ++j) {
          if (r.contains(i, j)) continue;
          weight[r][m.add_variable(names::psi(i, j, r), std::nullopt, std::nullopt)] = 1;
        }
      }
    } else if (r != whole) {
      weight[r][m.add_variable(names::nu(r), std::nullopt, std::nullopt)] = 1;
    }
  }

  for (const auto& r : qa.sets.monochromatic) {
    LinearExpr row = weight[r];
    for (int i = 0; i < t.row_count(); ++i) {
      for (int j = 0; j < t.col_count(); ++j) {
        if (r.contains(i, j)) row[phi[static_cast<std::size_t>(i * t.col_count() + j)]] += 1;
      }
    }
    m.add_row(names::mono(r), std::move(row), RowRelation::LessEqual, Rational(1));
  }
  for (const auto& [r, p] : qa.sets.gamma) {
    LinearExpr row;
    for (const auto& [v, c] : weight[p.first]) row[v] += c;
    for (const auto& [v, c] : weight[p.second]) row[v] += c;
    for (const auto& [v, c] : weight[r]) row[v] -= c;
    m.add_row(names::part(r, p), std::move(row), RowRelation::GreaterEqual, Rational(0));
  }
  return qa;
}

struct EquivalenceEntry {
  std::string kind;  // "variable", "row" or "objective"
  std::string dual_name;
  std::string qa_name;
  bool matched = false;
  std::string detail;
};

struct EquivalenceReport {
  bool complete = false;
  std::size_t matched = 0;
  std::size_t mismatched = 0;
  std::vector<EquivalenceEntry> entries;
};

namespace detail {

inline bool strip(const std::string& name, const std::string& prefix, std::string& inner) {
  if (name.rfind(prefix, 0) != 0 || name.back() != ']') return false;
  inner = name.substr(prefix.size(), name.size() - prefix.size() - 1);
  return true;
}

inline std::string render(const MilpModel& m, const LinearExpr& e) {
  std::string out;
  for (const auto& [v, c] : e) {
    if (!out.empty()) out += " ";
    out += (c < 0 ? "-" : "+") + Rational(abs(c)).get_str() + "*" + m.variables()[v].name;
  }
  return out.empty() ? "0" : out;
}

}  // namespace detail

/// Compares the dual of the relaxed PN model against the aggregated LP model
/// under the fixed map d_cover[c] -> phi[c], d_balance[R] -> -nu[R],
/// d_x[R] -> mono[R], d_y[R|P] -> part[R|P].
inline EquivalenceReport check_corollary1(const Relation& t, std::uint64_t limit = kDefaultRectangleLimit) {
  const MilpModel dual = dualize(relax(build_pn(t, limit).model));
  const MilpModel qa = build_qa(t, false, limit).model;
  EquivalenceReport report;
  auto record = [&](EquivalenceEntry e) {
    (e.matched ? report.matched : report.mismatched) += 1;
    report.entries.push_back(std::move(e));
  };

  // Variable map: dual VarId -> (qa VarId, sign).
  std::vector<std::optional<std::pair<VarId, int>>> var_map(dual.variables().size());
  std::vector<int> qa_var_hits(qa.variables().size(), 0);
  for (VarId v = 0; v < dual.variables().size(); ++v) {
    const auto& dv = dual.variables()[v];
    std::string inner;
    std::string target;
    int sign = 0;
    if (detail::strip(dv.name, "d_cover[", inner)) {
      target = "phi[" + inner + "]";
      sign = 1;
    } else if (detail::strip(dv.name, "d_balance[", inner)) {
      target = "nu[" + inner + "]";
      sign = -1;
    }
    EquivalenceEntry e{"variable", dv.name, target, false, ""};
    const auto qv = target.empty() ? std::nullopt : qa.find_variable(target);
    if (!qv) {
      e.detail = "no counterpart";
    } else if (qa.variables()[*qv].lower != dv.lower || qa.variables()[*qv].upper != dv.upper) {
      e.detail = "bounds differ";
    } else {
      var_map[v] = std::make_pair(*qv, sign);
      ++qa_var_hits[*qv];
      e.matched = true;
      e.detail = sign > 0 ? "sign +1" : "sign -1";
    }
    record(std::move(e));
  }
  for (VarId q = 0; q < qa.variables().size(); ++q) {
    if (qa_var_hits[q] != 1) {
      record({"variable", "", qa.variables()[q].name, false,
              "matched " + std::to_string(qa_var_hits[q]) + " times"});
    }
  }

  auto transform = [&](const LinearExpr& e, bool& ok) {
    LinearExpr out;
    for (const auto& [v, c] : e) {
      if (!var_map[v]) {
        ok = false;
        continue;
      }
      out[var_map[v]->first] += c * var_map[v]->second;
    }
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
  };

  std::vector<int> qa_row_hits(qa.rows().size(), 0);
  for (const auto& row : dual.rows()) {
    std::string inner;
    std::string target;
    if (detail::strip(row.name, "d_x[", inner)) {
      target = "mono[" + inner + "]";
    } else if (detail::strip(row.name, "d_y[", inner)) {
      target = "part[" + inner + "]";
    }
    EquivalenceEntry e{"row", row.name, target, false, ""};
    const auto qr = target.empty() ? std::nullopt : qa.find_row(target);
    if (!qr) {
      e.detail = "no counterpart";
      record(std::move(e));
      continue;
    }
    ++qa_row_hits[*qr];
    const Row& want = qa.rows()[*qr];
    bool mapped = true;
    LinearExpr lhs = transform(row.coefficients, mapped);
    Rational rhs = row.rhs;
    RowRelation rel = row.relation;
    if (rel != want.relation && flipped(rel) == want.relation) {
      for (auto& [v, c] : lhs) c = -c;
      rhs = -rhs;
      rel = flipped(rel);
    }
    if (!mapped) {
      e.detail = "references an unmapped dual variable";
    } else if (rel != want.relation) {
      e.detail = std::string("relation ") + to_string(rel) + " vs " + to_string(want.relation);
    } else if (lhs != want.coefficients || rhs != want.rhs) {
      e.detail = "coefficients differ: " + detail::render(qa, lhs) + " " + to_string(rel) + " " + rhs.get_str() +
                 " vs " + detail::render(qa, want.coefficients) + " " + to_string(want.relation) + " " +
                 want.rhs.get_str();
    } else {
      e.matched = true;
      e.detail = row.relation == want.relation ? "same direction" : "direction flipped";
    }
    record(std::move(e));
  }
  for (std::size_t r = 0; r < qa.rows().size(); ++r) {
    if (qa_row_hits[r] != 1) {
      record({"row", "", qa.rows()[r].name, false, "matched " + std::to_string(qa_row_hits[r]) + " times"});
    }
  }

  bool mapped = true;
  const LinearExpr obj = transform(dual.objective(), mapped);
  EquivalenceEntry e{"objective", "objective", "objective", false, ""};
  if (!mapped || dual.sense() != qa.sense() || obj != qa.objective()) {
    e.detail = "objective differs";
  } else {
    e.matched = true;
    e.detail = "maximize sum phi";
  }
  record(std::move(e));

  report.complete = report.mismatched == 0;
  return report;
}

}  // namespace kwpart
