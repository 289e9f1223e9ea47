#include <catch_amalgamated.hpp>

#include "kwpart/certificates.hpp"
#include "kwpart/partition_number.hpp"
#include "kwpart/random.hpp"
#include "kwpart/simplex.hpp"
#include "kwpart/verification.hpp"

using namespace kwpart;

namespace {

const Relation& xor2() {
  static const Relation t = build_relation(TruthTable::from_bits("0110"));
  return t;
}

}  // namespace

TEST_CASE("tree certificates are feasible") {
  const auto& t = xor2();
  const auto tree = protocol_partition_number(t).witness;
  const auto c = tree_to_certificate(t, tree);
  CHECK(c.size() == 4);
  CHECK(c.y.size() == 3);
  CHECK(check_feasible(t, c).feasible);
}

TEST_CASE("covering a cell twice violates cover") {
  const auto& t = xor2();
  auto c = tree_to_certificate(t, protocol_partition_number(t).witness);
  c.x[{1, 1}] += 1;
  const auto r = check_feasible(t, c);
  CHECK(!r.feasible);
  bool cover = false;
  for (const auto& v : r.violations) cover = cover || v.find("cover[0_0]") != std::string::npos;
  CHECK(cover);
}

TEST_CASE("a used leaf without production violates balance") {
  const Relation t({"a"}, {"b", "c"}, 2, {1, 2});
  Certificate c;
  c.x[{1, 1}] = 1;
  c.x[{1, 2}] = 1;
  const auto r = check_feasible(t, c);
  CHECK(!r.feasible);
  bool balance = false;
  for (const auto& v : r.violations) balance = balance || v.find("balance[1_1]") != std::string::npos;
  CHECK(balance);
}

TEST_CASE("negative and non-monochromatic entries are rejected") {
  const auto& t = xor2();
  Certificate neg;
  neg.x[{1, 1}] = -1;
  CHECK(!check_feasible(t, neg).feasible);
  Certificate not_mono;
  not_mono.x[t.full()] = 1;
  CHECK(!check_feasible(t, not_mono).feasible);
}

TEST_CASE("claim pair for a two-leaf tree is the root split") {
  const auto t = build_relation(TruthTable::from_bits("0001"));
  const Rectangle whole = t.full();
  const auto p = decode_partition(whole, "c3");
  const Certificate c{{{p.first, 1}, {p.second, 1}}, {{{whole, p}, 1}}};
  REQUIRE(check_feasible(t, c).feasible);
  const auto key = find_claim1_pair(t, c);
  CHECK(key.first == whole);
  CHECK(key.second == p);
}

TEST_CASE("claim pair for XOR_2 is at depth two") {
  const auto& t = xor2();
  const auto c = tree_to_certificate(t, protocol_partition_number(t).witness);
  const auto key = find_claim1_pair(t, c);
  CHECK(key.first.cell_count() == 2);
  CHECK(c.x_at(key.second.first) == 1);
  CHECK(c.x_at(key.second.second) == 1);
}

TEST_CASE("claim pair absent is a consistency fault") {
  const auto& t = xor2();
  Certificate c;
  c.y[{t.full(), enumerate_partitions(t.full()).front()}] = 1;
  CHECK_THROWS_AS(find_claim1_pair(t, c), ConsistencyError);
}

TEST_CASE("single-rectangle certificate gives a single node") {
  const Relation t({"a", "b"}, {"c"}, 1, {1, 1});
  const Certificate c{{{t.full(), 1}}, {}};
  const auto tree = certificate_to_tree(t, c);
  CHECK(tree.is_leaf());
  CHECK(tree.node == t.full());
}

TEST_CASE("round trip keeps the leaf set and checks every step") {
  SplitMix64 rng(31);
  for (int k = 0; k < 40; ++k) {
    const auto t = random_relation(rng, 1 + static_cast<int>(rng.below(4)), 1 + static_cast<int>(rng.below(4)), 2);
    const auto tree = random_tree(rng, t);
    const auto c = tree_to_certificate(t, tree);
    REQUIRE(check_feasible(t, c).feasible);
    CertificateToTreeTrace trace;
    const auto back = certificate_to_tree(t, c, {true}, &trace);
    CHECK(validate_tree(t, back).valid);
    CHECK(back.leaves() == tree.leaves());
    CHECK(trace.merges + 1 == tree.leaf_count());
    CHECK(trace.feasibility_checks == trace.merges);
  }
}

TEST_CASE("IP optimum converts to an optimal tree") {
  const auto t = build_relation(TruthTable::from_bits("0110"));
  const auto pn = build_pn(t);
  const auto s = solve_ip(pn.model);
  REQUIRE(s.optimal());
  const auto c = certificate_from_assignment(pn, s.values);
  const auto tree = certificate_to_tree(t, c, {true});
  CHECK(tree.leaf_count() == 4);
  CHECK(validate_tree(t, tree).valid);
}

TEST_CASE("infeasible certificate is refused") {
  const auto& t = xor2();
  Certificate c;
  c.x[{1, 1}] = 1;
  CHECK_THROWS_AS(certificate_to_tree(t, c), ModelError);
}

TEST_CASE("fractional assignment is not a certificate") {
  const auto t = build_relation(TruthTable::from_bits("0001"));
  const auto pn = build_pn(t);
  std::vector<Rational> values(pn.model.variables().size());
  values[0] = Rational(1, 2);
  CHECK_THROWS_AS(certificate_from_assignment(pn, values), ModelError);
}

TEST_CASE("neutral increments keep feasibility; other increments do not") {
  SplitMix64 rng(32);
  std::size_t variants = 0;
  for (int k = 0; k < 60; ++k) {
    const auto t = random_relation(rng, 3, 3, 2);
    const auto tree = random_tree(rng, t);
    const auto c = tree_to_certificate(t, tree);
    for (const auto& v : neutral_variants(t, c)) {
      ++variants;
      CHECK(v.changed_entries > 0);
      CHECK(check_feasible(t, v.certificate).feasible);
      CHECK(v.certificate.x == c.x);
      const auto back = certificate_to_tree(t, v.certificate, {true});
      CHECK(back.leaves() == c.used());
    }
    for (const auto& [key, value] : c.y) {
      for (const std::int64_t k2 : {1, 2}) {
        Certificate bad = c;
        bad.y[key] = value + k2;
        CHECK(!check_feasible(t, bad).feasible);
      }
    }
  }
  CHECK(variants > 0);
}

TEST_CASE("certificate text format") {
  const auto& t = xor2();
  const auto c = tree_to_certificate(t, protocol_partition_number(t).witness);
  const std::string text = format_certificate(c);
  CHECK(parse_certificate(text) == c);
  CHECK(text.find("y 3_3 ") != std::string::npos);
  CHECK_THROWS_AS(parse_certificate("z 1_1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_certificate("x 1_1\n"), ParseError);
  CHECK_THROWS_AS(parse_certificate("y 3_3 r9 1\n"), ParseError);
}

TEST_CASE("tree from leaves") {
  const auto& t = xor2();
  const auto tree = protocol_partition_number(t).witness;
  const auto other = tree_from_leaves(t, tree.leaves());
  REQUIRE(other);
  CHECK(other->leaves() == tree.leaves());
  CHECK(validate_tree(t, *other).valid);
  CHECK(!tree_from_leaves(t, {Rectangle{1, 1}}));
}
