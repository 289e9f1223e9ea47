#include <catch_amalgamated.hpp>

#include "kwpart/formula_oracle.hpp"
#include "kwpart/partition_number.hpp"

using namespace kwpart;

TEST_CASE("small formula sizes") {
  CHECK(formula_size(TruthTable::from_bits("0011")) == 1);  // x1
  CHECK(formula_size(TruthTable::from_bits("1010")) == 1);  // ~x2
  CHECK(formula_size(TruthTable::from_bits("0001")) == 2);
  CHECK(formula_size(TruthTable::from_bits("0110")) == 4);
  CHECK(formula_size(TruthTable::from_bits("01101001")) == 10);
  CHECK(!formula_size(TruthTable::from_bits("0110"), 3));
  CHECK(formula_size(TruthTable::from_bits("0000")) == 2);  // x1 & ~x1
}

TEST_CASE("witnesses compute f with L(f) leaves") {
  FunctionClass oracle(3);
  for (std::uint32_t bits = 1; bits < 255; ++bits) {
    const TruthTable f(3, bits);
    const auto size = oracle.formula_size(f);
    REQUIRE(size);
    const auto w = oracle.witness(f);
    CHECK(w.table(3) == f);
    CHECK(static_cast<int>(w.size()) == *size);
  }
}

TEST_CASE("witness rendering") {
  const auto w = witness_formula(TruthTable::from_bits("0001"));
  CHECK(w.size() == 2);
  CHECK((w.to_string() == "(x1 & x2)" || w.to_string() == "(x2 & x1)"));
  const auto lit = witness_formula(TruthTable::from_bits("01"));
  CHECK(lit.kind == Formula::Kind::Literal);
  CHECK(lit.to_string() == "x1");
  CHECK(lit.to_dot().find("shape=box") != std::string::npos);
}

TEST_CASE("De Morgan symmetry") {
  FunctionClass oracle(3);
  for (std::uint32_t bits = 1; bits < 255; ++bits) {
    const TruthTable f(3, bits);
    const TruthTable g(3, ~bits);
    CHECK(oracle.formula_size(f) == oracle.formula_size(g));
  }
}

TEST_CASE("level 1 holds the 2n literals; levels are disjoint") {
  FunctionClass oracle(3);
  CHECK(oracle.level(1).size() == 6);
  oracle.formula_size(TruthTable::from_bits("01101001"));
  std::set<std::uint32_t> seen;
  for (int s = 1; s <= oracle.computed_size(); ++s) {
    for (const auto t : oracle.level(s)) CHECK(seen.insert(t).second);
  }
}

TEST_CASE("partition number equals formula size for n = 2") {
  for (std::uint32_t bits = 1; bits < 15; ++bits) {
    const TruthTable f(2, bits);
    CHECK(protocol_partition_number(build_relation(f)).value == static_cast<std::uint64_t>(*formula_size(f)));
  }
}

TEST_CASE("arity limits") {
  CHECK_THROWS_AS(FunctionClass(5), ModelError);
  CHECK_THROWS_AS(FunctionClass(0), ModelError);
  FunctionClass oracle(2);
  CHECK_THROWS_AS(oracle.formula_size(TruthTable::from_bits("01101001")), ModelError);
  CHECK(formula_size(TruthTable::from_bits("0000000000000001")) == 4);
}
