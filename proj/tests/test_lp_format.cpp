#include <catch_amalgamated.hpp>

#include "kwpart/lp_format.hpp"

using namespace kwpart;

TEST_CASE("LP writer output") {
  MilpModel m("demo", Sense::Maximize);
  const auto x = m.add_variable("x[1_1]");
  const auto y = m.add_variable("y", std::nullopt, std::nullopt, false);
  const auto z = m.add_variable("z", Rational(-2), Rational(5), true);
  m.add_row("c[1]", {{x, 1}, {y, -1}}, RowRelation::LessEqual, 4);
  m.add_row("half", {{x, Rational(1, 2)}, {z, Rational(1, 3)}}, RowRelation::GreaterEqual, 1);
  m.set_objective({{x, 1}, {z, -3}});
  const std::string expected =
      "\\ Problem: demo\n"
      "\\ 3 variables, 2 rows\n"
      "Maximize\n"
      " obj: x(1_1) - 3 z\n"
      "Subject To\n"
      " c(1): x(1_1) - y <= 4\n"
      "\\ half scaled by 6\n"
      "\\ half exact: 1/2*x(1_1) 1/3*z rhs 1\n"
      " half: 3 x(1_1) + 2 z >= 6\n"
      "Bounds\n"
      " y free\n"
      " -2 <= z <= 5\n"
      "General\n"
      " z\n"
      "End\n";
  CHECK(to_lp_string(m) == expected);
  CHECK(to_lp_string(m) == to_lp_string(m));
}

TEST_CASE("long rows wrap every eight terms") {
  MilpModel m("wide");
  LinearExpr row;
  for (int i = 0; i < 10; ++i) row[m.add_variable("v" + std::to_string(i))] = 1;
  m.add_row("sum", row, RowRelation::Equal, 1);
  const std::string text = to_lp_string(m);
  CHECK(text.find(" sum: v0 + v1 + v2 + v3 + v4 + v5 + v6 + v7\n   + v8 + v9 = 1\n") != std::string::npos);
  CHECK(text.find(" obj: 0 v0\n") != std::string::npos);
}

TEST_CASE("fractional objective is scaled with a comment") {
  MilpModel m("frac");
  const auto a = m.add_variable("a");
  m.set_objective({{a, Rational(3, 4)}});
  const std::string text = to_lp_string(m);
  CHECK(text.find("\\ objective scaled by 4\n") != std::string::npos);
  CHECK(text.find(" obj: 3 a\n") != std::string::npos);
}
