#include <catch_amalgamated.hpp>

#include "kwpart/milp_model.hpp"

using namespace kwpart;

namespace {

MilpModel small_min_form() {
  MilpModel m("small", Sense::Minimize);
  const auto a = m.add_variable("a");
  const auto b = m.add_variable("b", Rational(0), std::nullopt, true);
  const auto c = m.add_variable("c");
  m.add_row("r1", {{a, 1}, {b, 2}}, RowRelation::Equal, 3);
  m.add_row("r2", {{b, -1}, {c, Rational(1, 2)}}, RowRelation::Equal, 1);
  m.set_objective({{a, 1}, {c, 4}});
  return m;
}

}  // namespace

TEST_CASE("model construction checks") {
  MilpModel m("m");
  const auto x = m.add_variable("x");
  CHECK_THROWS_AS(m.add_variable("x"), ModelError);
  CHECK_THROWS_AS(m.add_row("r", {{x + 1, 1}}, RowRelation::Equal, 0), ModelError);
  m.add_row("r", {{x, 0}}, RowRelation::LessEqual, 1);
  CHECK(m.rows()[0].coefficients.empty());
  CHECK_THROWS_AS(m.add_row("r", {}, RowRelation::Equal, 0), ModelError);
  CHECK_THROWS_AS(m.set_objective({{7, 1}}), ModelError);
  CHECK(m.find_variable("x") == x);
  CHECK(!m.find_variable("y"));
  CHECK(m.find_row("r") == 0);
}

TEST_CASE("relax clears integrality only") {
  const auto m = small_min_form();
  CHECK(m.has_integers());
  const auto r = relax(m);
  CHECK(!r.has_integers());
  CHECK(r.rows().size() == m.rows().size());
  CHECK(r.objective() == m.objective());
}

TEST_CASE("dual of a min-form model") {
  const auto d = dualize(relax(small_min_form()));
  CHECK(d.sense() == Sense::Maximize);
  REQUIRE(d.variables().size() == 2);
  CHECK(d.variables()[0].name == "d_r1");
  CHECK(d.variables()[0].is_free());
  REQUIRE(d.rows().size() == 3);
  CHECK(d.rows()[1].name == "d_b");
  CHECK(d.rows()[1].relation == RowRelation::LessEqual);
  CHECK(d.rows()[1].coefficients == LinearExpr{{0, 2}, {1, -1}});
  CHECK(d.rows()[1].rhs == 0);
  CHECK(d.rows()[2].coefficients == LinearExpr{{1, Rational(1, 2)}});
  CHECK(d.rows()[2].rhs == 4);
  CHECK(d.objective() == LinearExpr{{0, 3}, {1, 1}});
}

TEST_CASE("dualizing twice restores the model up to names") {
  const auto m = relax(small_min_form());
  const auto dd = dualize(dualize(m));
  CHECK(dd.sense() == m.sense());
  REQUIRE(dd.variables().size() == m.variables().size());
  REQUIRE(dd.rows().size() == m.rows().size());
  for (std::size_t v = 0; v < m.variables().size(); ++v) {
    CHECK(dd.variables()[v].name == "d_d_" + m.variables()[v].name);
    CHECK(dd.variables()[v].is_nonnegative());
  }
  for (std::size_t r = 0; r < m.rows().size(); ++r) {
    CHECK(dd.rows()[r].name == "d_d_" + m.rows()[r].name);
    CHECK(dd.rows()[r].relation == RowRelation::Equal);
    CHECK(dd.rows()[r].coefficients == m.rows()[r].coefficients);
    CHECK(dd.rows()[r].rhs == m.rows()[r].rhs);
  }
  CHECK(dd.objective() == m.objective());
}

TEST_CASE("dualize rejects other shapes") {
  CHECK_THROWS_AS(dualize(small_min_form()), ModelError);
  MilpModel bad("bad");
  const auto x = bad.add_variable("x");
  bad.add_row("r", {{x, 1}}, RowRelation::LessEqual, 1);
  CHECK_THROWS_AS(dualize(bad), ModelError);
  MilpModel bad_bound("bad_bound");
  bad_bound.add_variable("x", Rational(1));
  CHECK_THROWS_AS(dualize(bad_bound), ModelError);
  MilpModel bad_max("bad_max", Sense::Maximize);
  bad_max.add_variable("x");
  CHECK_THROWS_AS(dualize(bad_max), ModelError);
}

TEST_CASE("model equality") {
  CHECK(small_min_form() == small_min_form());
  auto other = small_min_form();
  other.set_sense(Sense::Maximize);
  CHECK(!(other == small_min_form()));
}
