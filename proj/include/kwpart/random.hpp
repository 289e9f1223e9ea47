#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kwpart/partition_tree.hpp"
#include "kwpart/relation.hpp"

namespace kwpart {

/// SplitMix64 generator with a platform-independent output sequence.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound) by rejection of the biased tail.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    for (;;) {
      const std::uint64_t v = next();
      if (v < limit) return v % bound;
    }
  }

 private:
  std::uint64_t state_;
};

/// Each cell gets a uniformly random non-empty subset of the colors, drawn
/// row-major as 1 + below(2^colors - 1).
inline Relation random_relation(SplitMix64& rng, int rows, int cols, int colors) {
  if (colors < 1 || colors > 31) throw ModelError("random relations support 1..31 colors");
  std::vector<Mask> cells;
  const std::uint64_t subsets = (std::uint64_t{1} << colors) - 1;
  for (int k = 0; k < rows * cols; ++k) cells.push_back(static_cast<Mask>(1 + rng.below(subsets)));
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  for (int i = 0; i < rows; ++i) row_labels.push_back(std::to_string(i));
  for (int j = 0; j < cols; ++j) col_labels.push_back(std::to_string(j));
  return Relation(std::move(row_labels), std::move(col_labels), colors, std::move(cells));
}

/// Random valid partition tree: a monochromatic node stops with probability
/// 1/2 (always, if it is a single cell); otherwise a uniformly random
/// partition is taken.
inline PartitionTree random_tree(SplitMix64& rng, const Relation& t, const Rectangle& r) {
  const auto parts = enumerate_partitions(r);
  const bool mono = t.common_colors(r) != 0;
  if (parts.empty() || (mono && rng.below(2) == 0)) return PartitionTree::leaf(r);
  const Partition& p = parts[rng.below(parts.size())];
  return PartitionTree::split(r, random_tree(rng, t, p.first), random_tree(rng, t, p.second));
}

inline PartitionTree random_tree(SplitMix64& rng, const Relation& t) { return random_tree(rng, t, t.full()); }

}  // namespace kwpart
