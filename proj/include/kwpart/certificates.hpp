#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kwpart/error.hpp"
#include "kwpart/formulations.hpp"
#include "kwpart/partition_tree.hpp"
#include "kwpart/rational.hpp"
#include "kwpart/relation.hpp"

namespace kwpart {

/// Integral (x, y) point of PN(T). Sparse: absent entries are 0.
struct Certificate {
  std::map<Rectangle, std::int64_t> x;
  std::map<GammaKey, std::int64_t> y;

  /// |x| = sum of x values.
  std::int64_t size() const {
    std::int64_t total = 0;
    for (const auto& [r, v] : x) total += v;
    return total;
  }

  /// M_x = {R : x[R] = 1}.
  std::set<Rectangle> used() const {
    std::set<Rectangle> out;
    for (const auto& [r, v] : x) {
      if (v == 1) out.insert(r);
    }
    return out;
  }

  std::int64_t x_at(const Rectangle& r) const {
    const auto it = x.find(r);
    return it == x.end() ? 0 : it->second;
  }
  std::int64_t y_at(const GammaKey& k) const {
    const auto it = y.find(k);
    return it == y.end() ? 0 : it->second;
  }

  void prune() {
    std::erase_if(x, [](const auto& e) { return e.second == 0; });
    std::erase_if(y, [](const auto& e) { return e.second == 0; });
  }

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// Lines `x <rect> <value>` and `y <rect> <partition> <value>`.
inline std::string format_certificate(const Certificate& c) {
  std::ostringstream out;
  for (const auto& [r, v] : c.x) out << "x " << encode(r) << ' ' << v << '\n';
  for (const auto& [k, v] : c.y) out << "y " << encode(k.first) << ' ' << encode(k.second) << ' ' << v << '\n';
  return out.str();
}

inline Certificate parse_certificate(std::string_view text) {
  std::istringstream in{std::string(text)};
  Certificate c;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind) || kind[0] == '#') continue;
    std::string rect;
    std::int64_t value = 0;
    if (kind == "x") {
      if (!(ls >> rect >> value)) throw ParseError("certificate line " + std::to_string(lineno) + ": expected `x <rect> <value>`");
      c.x[decode_rectangle(rect)] += value;
    } else if (kind == "y") {
      std::string part;
      if (!(ls >> rect >> part >> value)) {
        throw ParseError("certificate line " + std::to_string(lineno) + ": expected `y <rect> <partition> <value>`");
      }
      const Rectangle r = decode_rectangle(rect);
      c.y[{r, decode_partition(r, part)}] += value;
    } else {
      throw ParseError("certificate line " + std::to_string(lineno) + ": unknown entry `" + kind + "`");
    }
  }
  return c;
}

struct FeasibilityReport {
  bool feasible = true;
  std::vector<std::string> violations;
};

/// Evaluates every cover and balance row of PN(T) exactly at c.
inline FeasibilityReport check_feasible(const Relation& t, const Certificate& c) {
  FeasibilityReport report;
  auto fail = [&](std::string what) {
    report.feasible = false;
    report.violations.push_back(std::move(what));
  };
  const Rectangle whole = t.full();
  for (const auto& [r, v] : c.x) {
    if (!t.contains(r)) fail("x " + encode(r) + " is not a rectangle of the matrix");
    else if (v != 0 && t.common_colors(r) == 0) fail("x " + encode(r) + " is not monochromatic");
    if (v < 0) fail("x " + encode(r) + " is negative");
  }
  for (const auto& [k, v] : c.y) {
    if (!t.contains(k.first) || k.second.parent() != k.first) {
      fail("y " + encode(k.first) + " " + encode(k.second) + " is not a partition of its rectangle");
    }
    if (v < 0) fail("y " + encode(k.first) + " " + encode(k.second) + " is negative");
  }
  if (!report.feasible) return report;

  for (int i = 0; i < t.row_count(); ++i) {
    for (int j = 0; j < t.col_count(); ++j) {
      std::int64_t lhs = 0;
      for (const auto& [r, v] : c.x) {
        if (r.contains(i, j)) lhs += v;
      }
      if (lhs != 1) fail(names::cover(i, j) + ": covered " + std::to_string(lhs) + " times");
    }
  }
  // Net of incoming minus outgoing minus x, per rectangle.
  std::map<Rectangle, std::int64_t> net;
  for (const auto& [k, v] : c.y) {
    net[k.second.first] += v;
    net[k.second.second] += v;
    net[k.first] -= v;
  }
  for (const auto& [r, v] : c.x) net[r] -= v;
  for (const auto& [r, v] : net) {
    if (r != whole && v != 0) fail(names::balance(r) + ": residual " + std::to_string(v));
  }
  return report;
}

/// x[R] = 1 on the leaves, y[R|P] = 1 where internal node R splits by P.
inline Certificate tree_to_certificate(const Relation& t, const PartitionTree& tree) {
  const auto validation = validate_tree(t, tree);
  if (!validation.valid) throw ModelError("tree_to_certificate: invalid tree: " + validation.message);
  Certificate c;
  auto walk = [&](auto&& self, const PartitionTree& node) -> void {
    if (node.is_leaf()) {
      c.x[node.node] = 1;
      return;
    }
    c.y[{node.node, *node.split_partition()}] = 1;
    for (const auto& child : node.children) self(self, child);
  };
  walk(walk, tree);
  return c;
}

/// Reads an integral PN assignment back into a certificate.
inline Certificate certificate_from_assignment(const PnInstance& pn, const std::vector<Rational>& values) {
  Certificate c;
  auto integral = [](const Rational& q, const std::string& name) {
    if (!is_integral(q)) throw ModelError("certificate_from_assignment: " + name + " = " + q.get_str() + " is fractional");
    return static_cast<std::int64_t>(q.get_num().get_si());
  };
  for (const auto& [r, v] : pn.x) {
    const auto value = integral(values[v], pn.model.variables()[v].name);
    if (value != 0) c.x[r] = value;
  }
  for (const auto& [k, v] : pn.y) {
    const auto value = integral(values[v], pn.model.variables()[v].name);
    if (value != 0) c.y[k] = value;
  }
  return c;
}

/// Positive-y pair (R', {V', W'}) whose parts are both monochromatic and used
/// (x = 1). Scans positive pairs by ascending cell count of R', then canonical
/// order; a pair of minimum cell count always qualifies on a feasible input.
inline GammaKey find_claim1_pair(const Relation& t, const Certificate& c) {
  std::vector<GammaKey> candidates;
  for (const auto& [k, v] : c.y) {
    if (v > 0) candidates.push_back(k);
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const GammaKey& a, const GammaKey& b) {
    return a.first.cell_count() < b.first.cell_count();
  });
  for (const auto& k : candidates) {
    const Partition& p = k.second;
    const bool parts_ok = t.common_colors(p.first) != 0 && t.common_colors(p.second) != 0 &&
                          c.x_at(p.first) == 1 && c.x_at(p.second) == 1;
    if (parts_ok) return k;
  }
  throw ConsistencyError("no pair satisfies the merge conditions for certificate:\n" + format_certificate(c));
}

struct CertificateToTreeOptions {
  /// Re-check feasibility of the intermediate (T', x', y') after every merge.
  bool debug = false;
};

struct CertificateToTreeTrace {
  std::size_t merges = 0;
  std::size_t feasibility_checks = 0;  // intermediate checks that passed
};

/// Rebuilds a partition tree whose leaves are exactly M_x. Each step merges the
/// two used parts V', W' of a qualifying pair into R' on a relation where W'
/// borrows a common color of V'; the final tree is rebuilt by expanding R' back
/// into V' and W' in reverse order.
inline PartitionTree certificate_to_tree(const Relation& t, const Certificate& cert,
                                         const CertificateToTreeOptions& options = {},
                                         CertificateToTreeTrace* trace = nullptr) {
  const auto initial = check_feasible(t, cert);
  if (!initial.feasible) {
    throw ModelError("certificate_to_tree: infeasible certificate: " + initial.violations.front());
  }
  Relation current = t;
  Certificate c = cert;
  c.prune();
  std::vector<GammaKey> merges;
  CertificateToTreeTrace local;

  while (c.size() > 1) {
    const std::int64_t before = c.size();
    const GammaKey key = find_claim1_pair(current, c);
    const auto& [r, p] = key;
    const Mask shared = current.common_colors(p.first);
    const int color = std::countr_zero(shared);
    current = recolor(current, p.second, color);
    c.x.erase(p.first);
    c.x.erase(p.second);
    c.x[r] = 1;
    if (--c.y[key] == 0) c.y.erase(key);
    merges.push_back(key);
    ++local.merges;
    if (c.size() != before - 1) {
      throw ConsistencyError("merge at " + encode(r) + " did not reduce |x| by one");
    }
    if (options.debug) {
      const auto step = check_feasible(current, c);
      if (!step.feasible) {
        throw ConsistencyError("intermediate certificate infeasible after merge at " + encode(r) + ": " +
                               step.violations.front());
      }
      ++local.feasibility_checks;
    }
  }
  if (c.x_at(t.full()) != 1) {
    throw ConsistencyError("single remaining rectangle is not the full matrix:\n" + format_certificate(c));
  }

  PartitionTree tree = PartitionTree::leaf(t.full());
  for (auto it = merges.rbegin(); it != merges.rend(); ++it) {
    PartitionTree* leaf = tree.find_leaf(it->first);
    if (leaf == nullptr) throw ConsistencyError("no leaf " + encode(it->first) + " to expand");
    *leaf = PartitionTree::split(it->first, PartitionTree::leaf(it->second.first),
                                 PartitionTree::leaf(it->second.second));
  }

  const auto validation = validate_tree(t, tree);
  if (!validation.valid) throw ConsistencyError("rebuilt tree is invalid: " + validation.message);
  if (tree.leaves() != cert.used()) throw ConsistencyError("rebuilt tree leaves differ from M_x");
  if (trace != nullptr) *trace = local;
  return tree;
}

/// A tree with the given leaf set, choosing the last admissible partition in
/// canonical order at every node (the DP witness takes the first). Returns
/// nullopt if the leaves do not recursively partition the matrix.
inline std::optional<PartitionTree> tree_from_leaves(const Relation& t, const std::set<Rectangle>& leaves,
                                                     bool prefer_last = true) {
  std::map<Rectangle, std::optional<PartitionTree>> memo;
  auto build = [&](auto&& self, const Rectangle& r) -> std::optional<PartitionTree> {
    if (leaves.count(r) != 0) return PartitionTree::leaf(r);
    if (const auto it = memo.find(r); it != memo.end()) return it->second;
    // Every leaf must lie wholly inside or outside r.
    for (const auto& l : leaves) {
      if (l.intersects(r) && !r.contains(l)) return memo[r] = std::nullopt;
    }
    auto parts = enumerate_partitions(r);
    if (prefer_last) std::reverse(parts.begin(), parts.end());
    for (const auto& p : parts) {
      auto a = self(self, p.first);
      if (!a) continue;
      auto b = self(self, p.second);
      if (!b) continue;
      return memo[r] = PartitionTree::split(r, std::move(*a), std::move(*b));
    }
    return memo[r] = std::nullopt;
  };
  return build(build, t.full());
}

}  // namespace kwpart
