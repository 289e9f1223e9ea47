#include <catch_amalgamated.hpp>

#include "kwpart/formulations.hpp"
#include "kwpart/lp_format.hpp"
#include "kwpart/partition_number.hpp"
#include "kwpart/random.hpp"
#include "kwpart/simplex.hpp"

using namespace kwpart;

TEST_CASE("PN for AND_2") {
  const auto t = build_relation(TruthTable::from_bits("0001"));
  const auto pn = build_pn(t);
  CHECK(pn.sets.all.size() == 7);
  CHECK(pn.sets.monochromatic.size() == 5);
  CHECK(pn.sets.gamma.size() == 6);
  CHECK(pn.model.variables().size() == 11);
  CHECK(pn.model.rows().size() == 9);
  CHECK(pn.model.sense() == Sense::Minimize);
  CHECK(pn.model.find_variable("x[1_1]"));
  CHECK(!pn.model.find_variable("x[1_6]"));  // {01,10} is not monochromatic
  CHECK(pn.model.find_variable("y[1_7|c1]"));
  CHECK(pn.model.find_row("cover[0_2]"));
  CHECK(pn.model.find_row("balance[1_3]"));
  CHECK(!pn.model.find_row("balance[1_7]"));
  for (const auto& v : pn.model.variables()) {
    CHECK(v.integer);
    CHECK(v.is_nonnegative());
  }
  // balance[R] = incoming - outgoing - x[R]
  const auto& row = pn.model.rows()[*pn.model.find_row("balance[1_3]")];
  CHECK(row.rhs == 0);
  CHECK(row.coefficients.at(*pn.model.find_variable("x[1_3]")) == -1);
  CHECK(row.coefficients.at(*pn.model.find_variable("y[1_3|c1]")) == -1);
  CHECK(row.coefficients.at(*pn.model.find_variable("y[1_7|c3]")) == 1);
}

TEST_CASE("PN for a single cell") {
  const Relation t({"a"}, {"b"}, 1, {1});
  const auto pn = build_pn(t);
  CHECK(pn.model.variables().size() == 1);
  CHECK(pn.model.rows().size() == 1);
  const auto s = solve_ip(pn.model);
  REQUIRE(s.optimal());
  CHECK(s.objective == 1);
}

TEST_CASE("QA for AND_2") {
  const auto t = build_relation(TruthTable::from_bits("0001"));
  const auto qa = build_qa(t);
  CHECK(qa.model.sense() == Sense::Maximize);
  CHECK(qa.model.variables().size() == 9);
  CHECK(qa.model.rows().size() == 11);
  CHECK(!qa.model.find_variable("nu[1_7]"));
  for (const auto& v : qa.model.variables()) CHECK(v.is_free());
  const auto& part = qa.model.rows()[*qa.model.find_row("part[1_7|c1]")];
  CHECK(part.relation == RowRelation::GreaterEqual);
  CHECK(part.coefficients.size() == 2);  // nu[1_1] + nu[1_6], nu[C_T] dropped
  const auto s = solve_lp(qa.model);
  REQUIRE(s.optimal());
  CHECK(s.objective == 2);
}

TEST_CASE("raw psi form has the same optimum") {
  for (const char* bits : {"0001", "0110", "0111", "0010"}) {
    const auto t = build_relation(TruthTable::from_bits(bits));
    const auto agg = solve_lp(build_qa(t).model);
    const auto raw_model = build_qa(t, true).model;
    const auto raw = solve_lp(raw_model);
    REQUIRE(agg.optimal());
    REQUIRE(raw.optimal());
    CHECK(agg.objective == raw.objective);
    CHECK(verify_solution(raw_model, raw.values).ok);
  }
  const auto and2 = build_qa(build_relation(TruthTable::from_bits("0001")), true).model;
  CHECK(and2.find_variable("psi[0_1|1_1]"));
  CHECK(!and2.find_variable("psi[0_0|1_1]"));
}

TEST_CASE("dual of the PN relaxation matches QA") {
  for (std::uint32_t bits = 1; bits < 15; ++bits) {
    const auto t = build_relation(TruthTable(2, bits));
    const auto report = check_corollary1(t);
    CHECK(report.complete);
    CHECK(report.mismatched == 0);
    CHECK(report.matched == report.entries.size());
  }
  SplitMix64 rng(21);
  for (int k = 0; k < 10; ++k) {
    const auto t = random_relation(rng, 2 + static_cast<int>(rng.below(2)), 3, 3);
    CHECK(check_corollary1(t).complete);
  }
}

TEST_CASE("LP relaxation, QA and partition number coincide on small relations") {
  SplitMix64 rng(22);
  for (int k = 0; k < 15; ++k) {
    const auto t = random_relation(rng, 2, 3, 2);
    const Rational cp(static_cast<unsigned long>(protocol_partition_number(t).value));
    const auto pn = build_pn(t);
    const auto lp = solve_lp(relax(pn.model));
    const auto qa = solve_lp(build_qa(t).model);
    const auto dual = solve_lp(dualize(relax(pn.model)));
    REQUIRE(lp.optimal());
    REQUIRE(qa.optimal());
    REQUIRE(dual.optimal());
    CHECK(lp.objective == cp);
    CHECK(qa.objective == cp);
    CHECK(dual.objective == cp);
  }
}

TEST_CASE("exports are byte stable") {
  const auto t = build_relation(TruthTable::from_bits("0110"));
  CHECK(to_lp_string(build_pn(t).model) == to_lp_string(build_pn(t).model));
  CHECK(to_lp_string(build_qa(t).model) == to_lp_string(build_qa(t).model));
  const std::string pn = to_lp_string(build_pn(t).model);
  CHECK(pn.find("General\n") != std::string::npos);
  CHECK(pn.find(" cover(0_0): ") != std::string::npos);
}

TEST_CASE("guard is honored by the builders") {
  SplitMix64 rng(1);
  const auto t = random_relation(rng, 4, 4, 2);
  CHECK_THROWS_AS(build_pn(t, 10), SizeGuardError);
  CHECK_THROWS_AS(build_qa(t, false, 10), SizeGuardError);
}
