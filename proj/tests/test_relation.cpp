#include <catch_amalgamated.hpp>

#include <set>

#include "kwpart/random.hpp"
#include "kwpart/relation.hpp"

using namespace kwpart;

TEST_CASE("KW relation of AND_2") {
  const auto t = build_relation(TruthTable::from_bits("0001"));
  REQUIRE(t.row_count() == 1);
  REQUIRE(t.col_count() == 3);
  CHECK(t.row_labels() == std::vector<std::string>{"11"});
  CHECK(t.col_labels() == std::vector<std::string>{"00", "01", "10"});
  CHECK(format_colors(t.colors(0, 0)) == "{1,2}");
  CHECK(format_colors(t.colors(0, 1)) == "{1}");
  CHECK(format_colors(t.colors(0, 2)) == "{2}");
  CHECK(describe(t, {1, 3}) == "{11}x{00,01}");
}

TEST_CASE("KW cell colors are exactly the differing bits") {
  SplitMix64 rng(7);
  for (int n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const std::uint32_t bits = static_cast<std::uint32_t>(rng.next()) & TruthTable::full_mask(n);
      const TruthTable f(n, bits);
      if (f.is_constant()) {
        CHECK_THROWS_AS(build_relation(f), ConstantFunctionError);
        continue;
      }
      const auto t = build_relation(f);
      std::vector<std::uint32_t> ones;
      std::vector<std::uint32_t> zeros;
      for (std::uint32_t j = 0; j < f.size(); ++j) (f(j) ? ones : zeros).push_back(j);
      REQUIRE(t.row_count() == static_cast<int>(ones.size()));
      REQUIRE(t.col_count() == static_cast<int>(zeros.size()));
      for (int i = 0; i < t.row_count(); ++i) {
        for (int j = 0; j < t.col_count(); ++j) {
          Mask expected = 0;
          for (int k = 1; k <= n; ++k) {
            if (f.variable(ones[i], k) != f.variable(zeros[j], k)) expected |= Mask{1} << (k - 1);
          }
          CHECK(t.colors(i, j) == expected);
        }
      }
    }
  }
}

TEST_CASE("constant functions are rejected") {
  CHECK_THROWS_AS(build_relation(TruthTable::from_bits("0000")), ConstantFunctionError);
  CHECK_THROWS_AS(build_relation(TruthTable::from_bits("11")), ConstantFunctionError);
}

TEST_CASE("rectangle enumeration") {
  SplitMix64 rng(1);
  const auto t = random_relation(rng, 3, 2, 2);
  const auto rects = enumerate_rectangles(t);
  CHECK(rects.size() == 7 * 3);
  CHECK(std::is_sorted(rects.begin(), rects.end()));
  CHECK(std::set<Rectangle>(rects.begin(), rects.end()).size() == rects.size());
  CHECK(rects.back() == t.full());
  CHECK(t.rectangle_count() == 21);
}

TEST_CASE("rectangle guard") {
  SplitMix64 rng(1);
  const auto t = random_relation(rng, 4, 4, 2);
  CHECK_THROWS_AS(enumerate_rectangles(t, 224), SizeGuardError);
  CHECK(enumerate_rectangles(t, 225).size() == 225);
  try {
    t.check_rectangle_limit(10);
    FAIL("no guard error");
  } catch (const SizeGuardError& e) {
    CHECK(e.count() == 225);
    CHECK(e.limit() == 10);
  }
}

TEST_CASE("partition invariants") {
  SplitMix64 rng(2);
  const auto t = random_relation(rng, 3, 4, 2);
  for (const auto& r : enumerate_rectangles(t)) {
    const auto parts = enumerate_partitions(r);
    const std::size_t expected = ((std::size_t{1} << (r.row_count() - 1)) - 1) + ((std::size_t{1} << (r.col_count() - 1)) - 1);
    REQUIRE(parts.size() == expected);
    CHECK(std::is_sorted(parts.begin(), parts.end()));
    std::set<std::string> codes;
    for (const auto& p : parts) {
      CHECK(p.parent() == r);
      CHECK(p.first < p.second);
      CHECK(!p.first.intersects(p.second));
      CHECK(p.first.cell_count() + p.second.cell_count() == r.cell_count());
      CHECK(decode_partition(r, encode(p)) == p);
      codes.insert(encode(p));
    }
    CHECK(codes.size() == parts.size());
  }
  CHECK(enumerate_partitions({1, 1}).empty());
}

TEST_CASE("encodings") {
  CHECK(encode(Rectangle{5, 3}) == "5_3");
  CHECK(decode_rectangle("5_3") == Rectangle{5, 3});
  CHECK_THROWS_AS(decode_rectangle("53"), ParseError);
  CHECK_THROWS_AS(decode_rectangle("0_3"), ParseError);
  CHECK_THROWS_AS(decode_partition({3, 1}, "r3"), ParseError);
  CHECK_THROWS_AS(decode_partition({3, 1}, "c1"), ParseError);
  CHECK_THROWS_AS(decode_partition({3, 1}, "x1"), ParseError);
  const auto p = decode_partition({3, 1}, "r2");
  CHECK(p.first == Rectangle{1, 1});
  CHECK(p.second == Rectangle{2, 1});
}

TEST_CASE("monochromatic detection and common colors") {
  const auto t = build_relation(TruthTable::from_bits("0110"));
  CHECK(!is_monochromatic(t, t.full()));
  CHECK(is_monochromatic(t, {1, 1}) == 1);
  CHECK(t.common_colors({1, 1}) == 0b10);
  const auto table = common_color_table(t);
  for (const auto& r : enumerate_rectangles(t)) CHECK(table[r] == t.common_colors(r));
}

TEST_CASE("recolor only adds colors") {
  SplitMix64 rng(3);
  const auto t = random_relation(rng, 3, 3, 3);
  for (const auto& w : enumerate_rectangles(t)) {
    const auto u = recolor(t, w, 1);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        CHECK((u.colors(i, j) & t.colors(i, j)) == t.colors(i, j));
        CHECK(u.colors(i, j) == (w.contains(i, j) ? (t.colors(i, j) | 2U) : t.colors(i, j)));
      }
    }
    for (const auto& r : enumerate_rectangles(t)) CHECK((u.common_colors(r) & t.common_colors(r)) == t.common_colors(r));
  }
  CHECK_THROWS_AS(recolor(t, t.full(), 3), ModelError);
}

TEST_CASE("relation text format") {
  const std::string text = "# two by two\n2 2 3\n1 2\n3\n2\n1 3\n";
  const auto t = parse_relation(text);
  CHECK(t.row_count() == 2);
  CHECK(t.colors(0, 0) == 0b011);
  CHECK(t.colors(1, 1) == 0b101);
  CHECK(format_relation(t) == "2 2 3\n1 2\n3\n2\n1 3\n");
  CHECK(parse_relation(format_relation(t)) == t);
  CHECK_THROWS_AS(parse_relation(""), ParseError);
  CHECK_THROWS_AS(parse_relation("2 2 3\n1\n2\n3\n"), ParseError);
  CHECK_THROWS_AS(parse_relation("1 1 2\n3\n"), ParseError);
  CHECK_THROWS_AS(parse_relation("1 1 2\n\n"), ParseError);
  CHECK_THROWS_AS(parse_relation("1 1 2\nx\n"), ParseError);
}

TEST_CASE("relation validation") {
  CHECK_THROWS_AS(Relation({"a"}, {"b"}, 1, {0}), ParseError);
  CHECK_THROWS_AS(Relation({"a", "a"}, {"b"}, 1, {1, 1}), ParseError);
  CHECK_THROWS_AS(Relation({}, {"b"}, 1, {}), ParseError);
}
