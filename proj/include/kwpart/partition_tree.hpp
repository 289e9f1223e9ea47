#pragma once

#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kwpart/relation.hpp"

namespace kwpart {

/// Rooted binary tree of rectangles; an internal node's two children split it.
struct PartitionTree {
  Rectangle node;
  std::vector<PartitionTree> children;  // empty or exactly two

  bool is_leaf() const noexcept { return children.empty(); }

  static PartitionTree leaf(const Rectangle& r) { return {r, {}}; }
  static PartitionTree split(const Rectangle& r, PartitionTree a, PartitionTree b) {
    PartitionTree t{r, {}};
    t.children.push_back(std::move(a));
    t.children.push_back(std::move(b));
    return t;
  }

  std::size_t leaf_count() const {
    if (is_leaf()) return 1;
    std::size_t n = 0;
    for (const auto& c : children) n += c.leaf_count();
    return n;
  }

  void collect_leaves(std::vector<Rectangle>& out) const {
    if (is_leaf()) {
      out.push_back(node);
      return;
    }
    for (const auto& c : children) c.collect_leaves(out);
  }

  std::set<Rectangle> leaves() const {
    std::vector<Rectangle> v;
    collect_leaves(v);
    return {v.begin(), v.end()};
  }

  /// Partition formed by this node's children.
  std::optional<Partition> split_partition() const {
    if (children.size() != 2) return std::nullopt;
    const Rectangle& a = children[0].node;
    const Rectangle& b = children[1].node;
    if (a.cols == b.cols && a.cols == node.cols && (a.rows & b.rows) == 0 && (a.rows | b.rows) == node.rows) {
      return Partition::make(a, b, Axis::Row);
    }
    if (a.rows == b.rows && a.rows == node.rows && (a.cols & b.cols) == 0 && (a.cols | b.cols) == node.cols) {
      return Partition::make(a, b, Axis::Column);
    }
    return std::nullopt;
  }

  PartitionTree* find_leaf(const Rectangle& r) {
    if (is_leaf()) return node == r ? this : nullptr;
    for (auto& c : children) {
      if (!c.node.contains(r)) continue;
      if (auto* hit = c.find_leaf(r)) return hit;
    }
    return nullptr;
  }

  friend bool operator==(const PartitionTree&, const PartitionTree&) = default;
};

struct TreeValidation {
  bool valid = false;
  std::size_t leaf_count = 0;
  std::string message;  // first violation, empty when valid
};

namespace detail {

inline bool validate_node(const Relation& t, const PartitionTree& tree, TreeValidation& report) {
  if (!t.contains(tree.node)) {
    report.message = "node " + encode(tree.node) + " lies outside the matrix or is empty";
    return false;
  }
  if (tree.is_leaf()) {
    if (t.common_colors(tree.node) == 0) {
      report.message = "leaf " + encode(tree.node) + " " + describe(t, tree.node) + " is not monochromatic";
      return false;
    }
    ++report.leaf_count;
    return true;
  }
  if (tree.children.size() != 2 || !tree.split_partition()) {
    report.message = "children of node " + encode(tree.node) + " " + describe(t, tree.node) +
                     " do not form a partition of it";
    return false;
  }
  for (const auto& c : tree.children) {
    if (!validate_node(t, c, report)) return false;
  }
  return true;
}

}  // namespace detail

/// Checks root = full matrix, every split is a partition, every leaf monochromatic.
inline TreeValidation validate_tree(const Relation& t, const PartitionTree& tree) {
  TreeValidation report;
  if (tree.node != t.full()) {
    report.message = "root " + encode(tree.node) + " is not the full matrix " + encode(t.full());
    return report;
  }
  if (!detail::validate_node(t, tree, report)) {
    report.leaf_count = 0;
    return report;
  }
  // Leaves of a valid split tree tile the root; recheck directly.
  const auto leaves = tree.leaves();
  std::vector<int> cover(static_cast<std::size_t>(t.cell_count()), 0);
  for (const auto& r : leaves) {
    for (int i = 0; i < t.row_count(); ++i) {
      for (int j = 0; j < t.col_count(); ++j) {
        if (r.contains(i, j)) ++cover[static_cast<std::size_t>(i * t.col_count() + j)];
      }
    }
  }
  for (std::size_t k = 0; k < cover.size(); ++k) {
    if (cover[k] != 1) {
      report.message = "cell " + std::to_string(k) + " is covered " + std::to_string(cover[k]) + " times";
      report.leaf_count = 0;
      return report;
    }
  }
  report.valid = true;
  return report;
}

inline void write_tree_text(std::ostream& out, const Relation& t, const PartitionTree& tree, int depth = 0) {
  out << std::string(static_cast<std::size_t>(depth) * 2, ' ') << describe(t, tree.node);
  if (tree.is_leaf()) {
    out << "  color " << format_colors(t.common_colors(tree.node));
  }
  out << '\n';
  for (const auto& c : tree.children) write_tree_text(out, t, c, depth + 1);
}

inline std::string tree_to_text(const Relation& t, const PartitionTree& tree) {
  std::ostringstream out;
  write_tree_text(out, t, tree);
  return out.str();
}

inline std::string tree_to_dot(const Relation& t, const PartitionTree& tree) {
  std::ostringstream out;
  out << "digraph partition_tree {\n  node [shape=box];\n";
  int next = 0;
  auto emit = [&](auto&& self, const PartitionTree& node) -> int {
    const int id = next++;
    out << "  n" << id << " [label=\"" << describe(t, node.node);
    if (node.is_leaf()) out << "\\ncolor " << format_colors(t.common_colors(node.node));
    out << "\"];\n";
    for (const auto& c : node.children) {
      const int child = self(self, c);
      out << "  n" << id << " -> n" << child << ";\n";
    }
    return id;
  };
  emit(emit, tree);
  out << "}\n";
  return out.str();
}

}  // namespace kwpart
