#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "kwpart/error.hpp"
#include "kwpart/truth_table.hpp"

namespace kwpart {

using Mask = std::uint32_t;

inline constexpr std::uint64_t kDefaultRectangleLimit = 70000;

inline Mask lowest_bit(Mask m) noexcept { return m & (~m + 1U); }

/// Non-empty row subset times non-empty column subset. Ordered lexicographically
/// by (rows, cols) read as unsigned integers.
struct Rectangle {
  Mask rows = 0;
  Mask cols = 0;

  auto operator<=>(const Rectangle&) const = default;

  int row_count() const noexcept { return std::popcount(rows); }
  int col_count() const noexcept { return std::popcount(cols); }
  int cell_count() const noexcept { return row_count() * col_count(); }
  bool is_cell() const noexcept { return cell_count() == 1; }
  bool contains(int row, int col) const noexcept {
    return ((rows >> row) & 1U) && ((cols >> col) & 1U);
  }
  bool contains(const Rectangle& other) const noexcept {
    return (other.rows & ~rows) == 0 && (other.cols & ~cols) == 0;
  }
  bool intersects(const Rectangle& other) const noexcept {
    return (rows & other.rows) != 0 && (cols & other.cols) != 0;
  }
};

/// `<rowMask>_<colMask>` in decimal.
inline std::string encode(const Rectangle& r) {
  return std::to_string(r.rows) + "_" + std::to_string(r.cols);
}

inline Rectangle decode_rectangle(std::string_view text) {
  const auto sep = text.find('_');
  if (sep == std::string_view::npos) throw ParseError("malformed rectangle `" + std::string(text) + "`");
  try {
    const auto rows = static_cast<Mask>(std::stoul(std::string(text.substr(0, sep))));
    const auto cols = static_cast<Mask>(std::stoul(std::string(text.substr(sep + 1))));
    if (rows == 0 || cols == 0) throw ParseError("empty rectangle `" + std::string(text) + "`");
    return {rows, cols};
  } catch (const std::logic_error&) {
    throw ParseError("malformed rectangle `" + std::string(text) + "`");
  }
}

enum class Axis { Row, Column };

/// Unordered split of a rectangle into two rectangles along one axis,
/// stored with the canonically smaller part first.
struct Partition {
  Rectangle first;
  Rectangle second;
  Axis axis = Axis::Row;

  auto operator<=>(const Partition&) const = default;

  Rectangle parent() const noexcept {
    return {first.rows | second.rows, first.cols | second.cols};
  }
  bool has_part(const Rectangle& r) const noexcept { return first == r || second == r; }

  static Partition make(Rectangle a, Rectangle b, Axis axis) {
    if (b < a) std::swap(a, b);
    return {a, b, axis};
  }
};

/// `r<mask>` or `c<mask>`: the axis and the first part's mask along that axis.
/// Unique among the partitions of one rectangle.
inline std::string encode(const Partition& p) {
  return p.axis == Axis::Row ? "r" + std::to_string(p.first.rows)
                             : "c" + std::to_string(p.first.cols);
}

inline Partition decode_partition(const Rectangle& parent, std::string_view text) {
  if (text.size() < 2 || (text[0] != 'r' && text[0] != 'c')) {
    throw ParseError("malformed partition `" + std::string(text) + "`");
  }
  Mask part = 0;
  try {
    part = static_cast<Mask>(std::stoul(std::string(text.substr(1))));
  } catch (const std::logic_error&) {
    throw ParseError("malformed partition `" + std::string(text) + "`");
  }
  const bool row_axis = text[0] == 'r';
  const Mask whole = row_axis ? parent.rows : parent.cols;
  if (part == 0 || part == whole || (part & ~whole) != 0) {
    throw ParseError("partition `" + std::string(text) + "` does not split " + encode(parent));
  }
  if (row_axis) {
    return Partition::make({part, parent.cols}, {whole ^ part, parent.cols}, Axis::Row);
  }
  return Partition::make({parent.rows, part}, {parent.rows, whole ^ part}, Axis::Column);
}

/// Colored communication matrix: every cell carries a non-empty set of colors
/// (bitmask over 0 .. color_count-1).
class Relation {
 public:
  static constexpr int kMaxSide = 32;
  static constexpr int kMaxColors = 32;

  Relation(std::vector<std::string> row_labels, std::vector<std::string> col_labels,
           int color_count, std::vector<Mask> cells)
      : row_labels_(std::move(row_labels)),
        col_labels_(std::move(col_labels)),
        color_count_(color_count),
        cells_(std::move(cells)) {
    if (row_labels_.empty() || col_labels_.empty()) throw ParseError("relation needs at least one row and one column");
    if (row_labels_.size() > kMaxSide || col_labels_.size() > kMaxSide) {
      throw ParseError("relation sides are limited to 32 rows and 32 columns");
    }
    if (color_count_ < 1 || color_count_ > kMaxColors) {
      throw ParseError("color count must be in [1, 32], got " + std::to_string(color_count_));
    }
    if (cells_.size() != row_labels_.size() * col_labels_.size()) {
      throw ParseError("cell count does not match rows x cols");
    }
    check_unique(row_labels_, "row");
    check_unique(col_labels_, "column");
    const Mask palette = color_count_ == 32 ? ~Mask{0} : ((Mask{1} << color_count_) - 1);
    for (std::size_t k = 0; k < cells_.size(); ++k) {
      if (cells_[k] == 0) {
        throw ParseError("cell (" + std::to_string(k / col_labels_.size()) + "," +
                         std::to_string(k % col_labels_.size()) + ") has an empty color set");
      }
      if ((cells_[k] & ~palette) != 0) throw ParseError("cell color out of range");
    }
  }

  int row_count() const noexcept { return static_cast<int>(row_labels_.size()); }
  int col_count() const noexcept { return static_cast<int>(col_labels_.size()); }
  int color_count() const noexcept { return color_count_; }
  int cell_count() const noexcept { return row_count() * col_count(); }

  const std::vector<std::string>& row_labels() const noexcept { return row_labels_; }
  const std::vector<std::string>& col_labels() const noexcept { return col_labels_; }

  Mask colors(int row, int col) const { return cells_[static_cast<std::size_t>(row * col_count() + col)]; }
  const std::vector<Mask>& cells() const noexcept { return cells_; }

  Rectangle full() const noexcept {
    return {side_mask(row_count()), side_mask(col_count())};
  }

  bool contains(const Rectangle& r) const noexcept {
    return r.rows != 0 && r.cols != 0 && full().contains(r);
  }

  /// Intersection of the color sets of all cells in r.
  Mask common_colors(const Rectangle& r) const {
    Mask acc = ~Mask{0};
    for (Mask rows = r.rows; rows != 0; rows &= rows - 1) {
      const int i = std::countr_zero(rows);
      for (Mask cols = r.cols; cols != 0; cols &= cols - 1) {
        acc &= colors(i, std::countr_zero(cols));
      }
    }
    return acc;
  }

  /// Number of rectangles (2^rows - 1)(2^cols - 1).
  std::uint64_t rectangle_count() const noexcept {
    return ((std::uint64_t{1} << row_count()) - 1) * ((std::uint64_t{1} << col_count()) - 1);
  }

  void check_rectangle_limit(std::uint64_t limit) const {
    if (rectangle_count() > limit) throw SizeGuardError(rectangle_count(), limit);
  }

  friend bool operator==(const Relation&, const Relation&) = default;

  static Mask side_mask(int n) noexcept { return n >= 32 ? ~Mask{0} : ((Mask{1} << n) - 1); }

 private:
  static void check_unique(const std::vector<std::string>& labels, const char* what) {
    std::unordered_set<std::string> seen;
    for (const auto& l : labels) {
      if (!seen.insert(l).second) throw ParseError(std::string("duplicate ") + what + " label `" + l + "`");
    }
  }

  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
  int color_count_;
  std::vector<Mask> cells_;
};

/// KW relation of f: rows f^-1(1), columns f^-1(0), cell (x,y) colored {i : x_i != y_i}.
/// Labels are the inputs as x_1..x_n strings, in ascending integer order.
inline Relation build_relation(const TruthTable& f) {
  if (f.is_constant()) throw ConstantFunctionError();
  std::vector<std::uint32_t> ones;
  std::vector<std::uint32_t> zeros;
  for (std::uint32_t j = 0; j < f.size(); ++j) (f(j) ? ones : zeros).push_back(j);
  if (ones.size() > Relation::kMaxSide || zeros.size() > Relation::kMaxSide) {
    throw SizeGuardError(~std::uint64_t{0}, kDefaultRectangleLimit);
  }
  std::vector<Mask> cells;
  cells.reserve(ones.size() * zeros.size());
  for (const auto x : ones) {
    for (const auto y : zeros) {
      Mask set = 0;
      for (int i = 1; i <= f.arity(); ++i) {
        if (f.variable(x, i) != f.variable(y, i)) set |= Mask{1} << (i - 1);
      }
      cells.push_back(set);
    }
  }
  std::vector<std::string> rows;
  std::vector<std::string> cols;
  for (const auto x : ones) rows.push_back(f.input_label(x));
  for (const auto y : zeros) cols.push_back(f.input_label(y));
  return Relation(std::move(rows), std::move(cols), f.arity(), std::move(cells));
}

inline std::vector<Rectangle> enumerate_rectangles(const Relation& t,
                                                   std::uint64_t limit = kDefaultRectangleLimit) {
  t.check_rectangle_limit(limit);
  const Rectangle whole = t.full();
  std::vector<Rectangle> out;
  out.reserve(static_cast<std::size_t>(t.rectangle_count()));
  for (Mask rows = 1; rows <= whole.rows && rows != 0; ++rows) {
    for (Mask cols = 1; cols <= whole.cols && cols != 0; ++cols) out.push_back({rows, cols});
  }
  return out;
}

/// Lowest-index color shared by every cell of r, if any.
inline std::optional<int> is_monochromatic(const Relation& t, const Rectangle& r) {
  const Mask common = t.common_colors(r);
  if (common == 0) return std::nullopt;
  return std::countr_zero(common);
}

namespace detail {

// Proper non-empty submasks of `whole` containing its lowest set bit.
template <typename Fn>
void for_each_split(Mask whole, Fn&& fn) {
  const Mask low = lowest_bit(whole);
  const Mask rest = whole ^ low;
  for (Mask sub = rest;; sub = (sub - 1) & rest) {
    const Mask part = sub | low;
    if (part != whole) fn(part, whole ^ part);
    if (sub == 0) break;
  }
}

}  // namespace detail

/// All unordered two-way splits of r, sorted canonically.
inline std::vector<Partition> enumerate_partitions(const Rectangle& r) {
  std::vector<Partition> out;
  detail::for_each_split(r.rows, [&](Mask a, Mask b) {
    out.push_back(Partition::make({a, r.cols}, {b, r.cols}, Axis::Row));
  });
  detail::for_each_split(r.cols, [&](Mask a, Mask b) {
    out.push_back(Partition::make({r.rows, a}, {r.rows, b}, Axis::Column));
  });
  std::sort(out.begin(), out.end());
  return out;
}

/// Copy of t with `color` added to every cell of w.
inline Relation recolor(const Relation& t, const Rectangle& w, int color) {
  if (color < 0 || color >= t.color_count()) throw ModelError("recolor: color index out of range");
  std::vector<Mask> cells = t.cells();
  for (Mask rows = w.rows; rows != 0; rows &= rows - 1) {
    const int i = std::countr_zero(rows);
    for (Mask cols = w.cols; cols != 0; cols &= cols - 1) {
      cells[static_cast<std::size_t>(i * t.col_count() + std::countr_zero(cols))] |= Mask{1} << color;
    }
  }
  return Relation(t.row_labels(), t.col_labels(), t.color_count(), std::move(cells));
}

/// Color set rendered 1-based, e.g. `{1,2}`.
inline std::string format_colors(Mask colors) {
  std::string out = "{";
  bool first = true;
  for (; colors != 0; colors &= colors - 1) {
    if (!first) out += ",";
    out += std::to_string(std::countr_zero(colors) + 1);
    first = false;
  }
  return out + "}";
}

/// Relation text format: header `rows cols colors`, then one line per cell in
/// row-major order listing that cell's colors (1-based). `#` starts a comment.
inline Relation parse_relation(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.push_back(line);
  }
  if (lines.empty()) throw ParseError("relation file is empty");
  std::istringstream header(lines[0]);
  int rows = 0;
  int cols = 0;
  int colors = 0;
  if (!(header >> rows >> cols >> colors) || rows < 1 || cols < 1 || colors < 1) {
    throw ParseError("relation header must be `rows cols colors` with positive values");
  }
  if (rows > Relation::kMaxSide || cols > Relation::kMaxSide) {
    throw ParseError("relation sides are limited to 32 rows and 32 columns");
  }
  const auto expected = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  if (lines.size() - 1 != expected) {
    throw ParseError("expected " + std::to_string(expected) + " cell lines, found " +
                     std::to_string(lines.size() - 1));
  }
  std::vector<Mask> cells;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    std::istringstream cell(lines[k]);
    Mask set = 0;
    std::string token;
    while (cell >> token) {
      int c = 0;
      try {
        std::size_t used = 0;
        c = std::stoi(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::logic_error&) {
        throw ParseError("bad color `" + token + "` on cell line " + std::to_string(k));
      }
      if (c < 1 || c > colors) throw ParseError("color " + token + " out of range on cell line " + std::to_string(k));
      set |= Mask{1} << (c - 1);
    }
    cells.push_back(set);
  }
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  for (int i = 0; i < rows; ++i) row_labels.push_back(std::to_string(i));
  for (int j = 0; j < cols; ++j) col_labels.push_back(std::to_string(j));
  return Relation(std::move(row_labels), std::move(col_labels), colors, std::move(cells));
}

inline std::string format_relation(const Relation& t) {
  std::ostringstream out;
  out << t.row_count() << ' ' << t.col_count() << ' ' << t.color_count() << '\n';
  for (int i = 0; i < t.row_count(); ++i) {
    for (int j = 0; j < t.col_count(); ++j) {
      bool first = true;
      for (Mask c = t.colors(i, j); c != 0; c &= c - 1) {
        if (!first) out << ' ';
        out << std::countr_zero(c) + 1;
        first = false;
      }
      out << '\n';
    }
  }
  return out.str();
}

/// Row/column label sets of r, e.g. `{11}x{00,01}`.
inline std::string describe(const Relation& t, const Rectangle& r) {
  std::string out = "{";
  bool first = true;
  for (Mask m = r.rows; m != 0; m &= m - 1) {
    if (!first) out += ",";
    out += t.row_labels()[static_cast<std::size_t>(std::countr_zero(m))];
    first = false;
  }
  out += "}x{";
  first = true;
  for (Mask m = r.cols; m != 0; m &= m - 1) {
    if (!first) out += ",";
    out += t.col_labels()[static_cast<std::size_t>(std::countr_zero(m))];
    first = false;
  }
  return out + "}";
}

/// Dense per-rectangle storage indexed by (rowMask, colMask).
template <typename T>
class RectangleTable {
 public:
  RectangleTable() = default;
  RectangleTable(int row_count, int col_count, const T& init = T{})
      : col_bits_(col_count),
        data_(std::size_t{1} << (row_count + col_count), init) {}

  T& operator[](const Rectangle& r) { return data_[index(r)]; }
  const T& operator[](const Rectangle& r) const { return data_[index(r)]; }

 private:
  std::size_t index(const Rectangle& r) const noexcept {
    return (static_cast<std::size_t>(r.rows) << col_bits_) | r.cols;
  }

  int col_bits_ = 0;
  std::vector<T> data_;
};

/// Common colors of every rectangle, filled in by inclusion order.
inline RectangleTable<Mask> common_color_table(const Relation& t, std::uint64_t limit = kDefaultRectangleLimit) {
  t.check_rectangle_limit(limit);
  RectangleTable<Mask> table(t.row_count(), t.col_count(), 0);
  for (const auto& r : enumerate_rectangles(t, limit)) {
    if (r.is_cell()) {
      table[r] = t.colors(std::countr_zero(r.rows), std::countr_zero(r.cols));
    } else if (r.row_count() > 1) {
      const Mask low = lowest_bit(r.rows);
      table[r] = table[Rectangle{low, r.cols}] & table[Rectangle{r.rows ^ low, r.cols}];
    } else {
      const Mask low = lowest_bit(r.cols);
      table[r] = table[Rectangle{r.rows, low}] & table[Rectangle{r.rows, r.cols ^ low}];
    }
  }
  return table;
}

}  // namespace kwpart
