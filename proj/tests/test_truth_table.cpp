#include <catch_amalgamated.hpp>

#include "kwpart/truth_table.hpp"

using namespace kwpart;

TEST_CASE("truth table string round trip") {
  const auto f = TruthTable::from_bits("0001");
  CHECK(f.arity() == 2);
  CHECK(f.size() == 4);
  CHECK(f.packed() == 0b1000);
  CHECK(f.to_string() == "0001");
  CHECK(!f(0));
  CHECK(f(3));
}

TEST_CASE("x1 is the most significant input bit") {
  const TruthTable f(3, 0);
  CHECK(f.variable(0b100, 1));
  CHECK(!f.variable(0b100, 3));
  CHECK(f.variable(0b001, 3));
  CHECK(f.input_label(0b110) == "110");
}

TEST_CASE("file format with header") {
  const auto f = TruthTable::parse("n=3\n01101001\n");
  CHECK(f == TruthTable::from_bits("01101001"));
  CHECK_THROWS_AS(TruthTable::parse("n=2\n01101001"), ParseError);
  CHECK_THROWS_AS(TruthTable::parse("0110"), ParseError);
  CHECK_THROWS_AS(TruthTable::parse("n=x\n0110"), ParseError);
  CHECK_THROWS_AS(TruthTable::parse("n=2\n"), ParseError);
}

TEST_CASE("malformed bit strings") {
  CHECK_THROWS_AS(TruthTable::from_bits(""), ParseError);
  CHECK_THROWS_AS(TruthTable::from_bits("0"), ParseError);
  CHECK_THROWS_AS(TruthTable::from_bits("011"), ParseError);
  CHECK_THROWS_AS(TruthTable::from_bits("01a1"), ParseError);
  CHECK_THROWS_AS(TruthTable(6, 0), ParseError);
}

TEST_CASE("constant detection and masking") {
  CHECK(TruthTable::from_bits("0000").is_constant());
  CHECK(TruthTable::from_bits("1111").is_constant());
  CHECK(!TruthTable::from_bits("0110").is_constant());
  CHECK(TruthTable(2, 0xFFFF).packed() == 0xF);
  CHECK(TruthTable(5, 0xFFFFFFFF).is_constant());
}
