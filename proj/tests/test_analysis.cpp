#include <catch_amalgamated.hpp>

#include "kwpart/analysis.hpp"
#include "kwpart/verification.hpp"

using namespace kwpart;

TEST_CASE("SplitMix64 reference outputs") {
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
  CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
  SplitMix64 a(42);
  SplitMix64 b(42);
  for (int k = 0; k < 10; ++k) CHECK(a.below(7) == b.below(7));
}

TEST_CASE("random relations reproduce from the seed") {
  SplitMix64 a(5);
  SplitMix64 b(5);
  CHECK(random_relation(a, 3, 3, 3) == random_relation(b, 3, 3, 3));
  const auto cases = random_relation_cases(1, 3, 3, 3, 3);
  CHECK(cases[0].relation == random_relation_cases(1, 1, 3, 3, 3)[0].relation);
}

TEST_CASE("analyze AND_2 and XOR_2") {
  for (const auto& [bits, value] : {std::pair{"0001", 2}, std::pair{"0110", 4}}) {
    AnalyzeOptions options;
    options.debug_certificates = true;
    const auto r = analyze(TruthTable::from_bits(bits), options);
    CHECK(r.ok());
    CHECK(r.partition_number == static_cast<std::uint64_t>(value));
    CHECK(r.formula_size == value);
    CHECK(r.ip.objective == value);
    CHECK(r.relaxation.objective == value);
    CHECK(r.qa.objective == value);
    CHECK(r.dual.objective == value);
    CHECK(r.ip_certificate_to_tree.ok);
    CHECK(r.ip_certificate_to_tree.feasibility_checks == static_cast<std::size_t>(value - 1));
    for (const auto& id : r.identities) CHECK(id.holds);
  }
}

TEST_CASE("analyze a relation file input") {
  const auto t = parse_relation("2 2 2\n1\n2\n2\n1\n");
  const auto r = analyze(t, "relation", std::nullopt);
  CHECK(r.ok());
  CHECK(!r.formula_size);
  CHECK(r.partition_number == 4);
}

TEST_CASE("row activity of neutral variants is unchanged") {
  const auto t = build_relation(TruthTable::from_bits("0110"));
  const auto c = tree_to_certificate(t, protocol_partition_number(t).witness);
  for (const auto& v : neutral_variants(t, c)) CHECK(row_activity(t, v.certificate) == row_activity(t, c));
}

TEST_CASE("constant functions are refused") {
  CHECK_THROWS_AS(analyze(TruthTable::from_bits("0000")), ConstantFunctionError);
}
