#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "kwpart/partition_tree.hpp"
#include "kwpart/relation.hpp"

namespace kwpart {

struct PartitionNumberResult {
  std::uint64_t value = 0;
  PartitionTree witness;
};

/// Memoized recursion C(R) = 1 if R is monochromatic, otherwise the minimum of
/// C(V) + C(W) over partitions {V, W} of R. Ties go to the first partition in
/// canonical order.
class PartitionSolver {
 public:
  explicit PartitionSolver(const Relation& t, std::uint64_t limit = kDefaultRectangleLimit)
      : relation_(t),
        colors_(common_color_table(t, limit)),
        memo_(t.row_count(), t.col_count(), Entry{}) {}

  std::uint64_t value(const Rectangle& r) {
    Entry& e = memo_[r];
    if (e.value != 0) return e.value;
    if (colors_[r] != 0) {
      e.value = 1;
      return 1;
    }
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    Partition best_split{};
    for (const auto& p : enumerate_partitions(r)) {
      const std::uint64_t v = value(p.first) + value(p.second);
      if (v < best) {
        best = v;
        best_split = p;
      }
    }
    e.value = best;
    e.split = best_split;
    return best;
  }

  PartitionTree witness(const Rectangle& r) {
    value(r);
    const Entry& e = memo_[r];
    if (e.value == 1) return PartitionTree::leaf(r);
    const Partition p = e.split;
    return PartitionTree::split(r, witness(p.first), witness(p.second));
  }

  const Relation& relation() const noexcept { return relation_; }
  bool monochromatic(const Rectangle& r) const { return colors_[r] != 0; }

 private:
  struct Entry {
    std::uint64_t value = 0;  // 0 = not computed
    Partition split{};
  };

  const Relation& relation_;
  RectangleTable<Mask> colors_;
  RectangleTable<Entry> memo_;
};

inline PartitionNumberResult protocol_partition_number(const Relation& t,
                                                       std::uint64_t limit = kDefaultRectangleLimit) {
  PartitionSolver solver(t, limit);
  const Rectangle whole = t.full();
  PartitionNumberResult result;
  result.value = solver.value(whole);
  result.witness = solver.witness(whole);
  return result;
}

}  // namespace kwpart
