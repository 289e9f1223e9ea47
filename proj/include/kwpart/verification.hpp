#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kwpart/analysis.hpp"
#include "kwpart/random.hpp"

namespace kwpart {

struct Case {
  std::string name;
  Relation relation;
  std::optional<TruthTable> function;
};

inline Case function_case(std::string name, const TruthTable& f) { return {std::move(name), build_relation(f), f}; }

/// The 14 non-constant functions of two variables, in truth-table order.
inline std::vector<Case> n2_exhaustive() {
  std::vector<Case> out;
  for (std::uint32_t bits = 1; bits < 15; ++bits) {
    const TruthTable f(2, bits);
    out.push_back(function_case("fn " + f.to_string(), f));
  }
  return out;
}

inline std::vector<Case> n3_curated() {
  return {
      function_case("parity_3", TruthTable::from_bits("01101001")),
      function_case("majority_3", TruthTable::from_bits("00010111")),
      function_case("and_3", TruthTable::from_bits("00000001")),
      function_case("or_3", TruthTable::from_bits("01111111")),
      function_case("x1_and_(x2_or_x3)", TruthTable::from_bits("00000111")),
  };
}

inline std::vector<Case> random_relation_cases(std::uint64_t seed, std::size_t count, int rows, int cols,
                                               int colors) {
  SplitMix64 rng(seed);
  std::vector<Case> out;
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back({"random " + std::to_string(seed) + "/" + std::to_string(k), random_relation(rng, rows, cols, colors),
                   std::nullopt});
  }
  return out;
}

/// Activity of certificate c on every PN row: cover[cell] - 1 and the non-zero balance[R].
/// A difference of two certificates with all-zero activity is a neutral increment.
inline std::map<std::string, std::int64_t> row_activity(const Relation& t, const Certificate& c) {
  std::map<std::string, std::int64_t> act;
  for (int i = 0; i < t.row_count(); ++i) {
    for (int j = 0; j < t.col_count(); ++j) {
      std::int64_t covered = 0;
      for (const auto& [r, v] : c.x) {
        if (r.contains(i, j)) covered += v;
      }
      act[names::cover(i, j)] = covered - 1;
    }
  }
  std::map<Rectangle, std::int64_t> net;
  for (const auto& [k, v] : c.y) {
    net[k.second.first] += v;
    net[k.second.second] += v;
    net[k.first] -= v;
  }
  for (const auto& [r, v] : c.x) net[r] -= v;
  for (const auto& [r, v] : net) {
    if (r != t.full() && v != 0) act[names::balance(r)] = v;
  }
  return act;
}

struct NeutralVariant {
  Certificate certificate;
  std::size_t changed_entries = 0;  // y entries moved by the increment
};

/// Certificates obtained from c by adding increments that leave every PN row
/// unchanged: the difference between c and the certificate of another tree
/// over the same leaves. Each increment is checked to be neutral before use.
inline std::vector<NeutralVariant> neutral_variants(const Relation& t, const Certificate& c) {
  std::vector<NeutralVariant> out;
  const auto base = row_activity(t, c);
  for (const bool prefer_last : {true, false}) {
    const auto alt = tree_from_leaves(t, c.used(), prefer_last);
    if (!alt) continue;
    Certificate other = tree_to_certificate(t, *alt);
    if (other == c) continue;
    std::map<GammaKey, std::int64_t> delta;
    for (const auto& [k, v] : other.y) delta[k] += v;
    for (const auto& [k, v] : c.y) delta[k] -= v;
    Certificate inflated = c;
    std::size_t changed = 0;
    for (const auto& [k, d] : delta) {
      if (d == 0) continue;
      ++changed;
      inflated.y[k] += d;
    }
    inflated.prune();
    if (row_activity(t, inflated) != base) throw ConsistencyError("increment is not neutral");
    bool duplicate = false;
    for (const auto& v : out) duplicate = duplicate || v.certificate == inflated;
    if (!duplicate) out.push_back({std::move(inflated), changed});
  }
  return out;
}

struct CriterionResult {
  CriterionResult() = default;
  CriterionResult(int criterion, std::string text) : id(criterion), title(std::move(text)) {}

  int id = 0;
  std::string title;
  bool passed = true;
  std::size_t checked = 0;
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  double seconds = 0;

  void check(bool ok, const std::string& what) {
    ++checked;
    if (!ok) {
      passed = false;
      failures.push_back(what);
    }
  }
};

struct AcceptanceConfig {
  std::uint64_t ip_seed = 1;
  std::size_t ip_random_count = 50;
  std::uint64_t dual_seed = 2;
  std::size_t dual_random_count = 20;
  std::uint64_t tree_seed = 3;
  std::size_t random_tree_count = 100;
  AnalyzeOptions analyze;
  /// Called after each analyzed case (for progress output).
  std::function<void(const Case&, const RunReport&)> on_case;
};

/// Runs the eight acceptance criteria. Every case is analyzed once and the
/// criteria read the resulting reports.
class AcceptanceSuite {
 public:
  explicit AcceptanceSuite(AcceptanceConfig config = {}) : config_(std::move(config)) {
    config_.analyze.debug_certificates = true;
  }

  std::vector<CriterionResult> run() {
    const auto start = std::chrono::steady_clock::now();
    n2_ = analyze_all(n2_exhaustive());
    n3_ = analyze_all(n3_curated());
    random_ip_ = analyze_all(random_relation_cases(config_.ip_seed, config_.ip_random_count, 3, 3, 3));
    random_dual_ = analyze_all(random_relation_cases(config_.dual_seed, config_.dual_random_count, 3, 3, 3));
    analysis_seconds_ = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::vector<CriterionResult> out;
    out.push_back(timed([&] { return criterion1(); }));
    out.push_back(timed([&] { return criterion2(); }));
    out.push_back(timed([&] { return criterion3(); }));
    out.push_back(timed([&] { return criterion4(); }));
    out.push_back(timed([&] { return criterion5(); }));
    CriterionResult forward;
    CriterionResult backward;
    timed_pair(forward, backward);
    out.push_back(std::move(forward));
    out.push_back(std::move(backward));
    out.push_back(timed([&] { return criterion8(); }));
    return out;
  }

  double analysis_seconds() const noexcept { return analysis_seconds_; }

 private:
  using Reports = std::vector<std::pair<Case, RunReport>>;

  Reports analyze_all(std::vector<Case> cases) {
    Reports out;
    for (auto& c : cases) {
      RunReport r = analyze(c.relation, c.name, c.function, config_.analyze);
      if (config_.on_case) config_.on_case(c, r);
      out.emplace_back(std::move(c), std::move(r));
    }
    return out;
  }

  template <class F>
  static CriterionResult timed(F&& body) {
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r = body();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  }

  static const Identity* find(const RunReport& r, const std::string& name) {
    for (const auto& id : r.identities) {
      if (id.name == name) return &id;
    }
    return nullptr;
  }

  static std::string describe(const Case& c, const Identity* id) {
    if (id == nullptr) return c.name + ": identity missing";
    return c.name + ": " + id->lhs + " = " + id->lhs_value + ", " + id->rhs + " = " + id->rhs_value;
  }

  static void expect(CriterionResult& res, const Reports& reports, const std::string& identity) {
    for (const auto& [c, r] : reports) {
      const Identity* id = find(r, identity);
      res.check(id != nullptr && id->holds, describe(c, id));
    }
  }

  CriterionResult criterion1() const {
    CriterionResult res{1, "partition number equals formula size for all 14 n=2 functions"};
    for (const auto& [c, r] : n2_) {
      const bool ok = r.formula_size && static_cast<std::uint64_t>(*r.formula_size) == r.partition_number;
      res.check(ok, c.name + ": C^P = " + std::to_string(r.partition_number) + ", L = " +
                        (r.formula_size ? std::to_string(*r.formula_size) : std::string("none")));
    }
    return res;
  }

  CriterionResult criterion2() const {
    CriterionResult res{2, "QA optimum equals the partition number (n=2 exhaustive, n=3 curated)"};
    expect(res, n2_, "qa-equals-partition-number");
    expect(res, n3_, "qa-equals-partition-number");
    return res;
  }

  CriterionResult criterion3() const {
    CriterionResult res{3, "IP optimum equals the partition number (criterion 2 cases + 50 random 3x3)"};
    for (const auto* set : {&n2_, &n3_, &random_ip_}) expect(res, *set, "ip-equals-partition-number");
    return res;
  }

  CriterionResult criterion4() const {
    CriterionResult res{4, "LP relaxation equals IP optimum on every criterion 3 instance"};
    std::size_t single_node = 0;
    std::size_t total = 0;
    for (const auto* set : {&n2_, &n3_, &random_ip_}) {
      expect(res, *set, "no-integrality-gap");
      for (const auto& [c, r] : *set) {
        ++total;
        if (r.ip.node_count == 1) ++single_node;
      }
    }
    res.notes.push_back("branch-and-bound closed at the root on " + std::to_string(single_node) + "/" +
                        std::to_string(total) + " instances");
    return res;
  }

  CriterionResult criterion5() const {
    CriterionResult res{5, "dual of the relaxation is QA (structure and optimum)"};
    for (const auto* set : {&n2_, &random_dual_}) expect(res, *set, "dual-structure-matches-qa");
    for (const auto* set : {&n2_, &n3_, &random_dual_}) expect(res, *set, "dual-equals-qa");
    return res;
  }

  void timed_pair(CriterionResult& forward, CriterionResult& backward) const {
    const auto start = std::chrono::steady_clock::now();
    forward = CriterionResult(6, "tree_to_certificate is feasible (DP witnesses + 100 random trees)");
    backward = CriterionResult(7, "certificate_to_tree rebuilds M_x (IP, tree and neutrally inflated certificates)");
    std::size_t inflated = 0;
    std::size_t rejected = 0;
    for (const auto* set : {&n2_, &n3_, &random_ip_, &random_dual_}) {
      for (const auto& [c, r] : *set) {
        forward.check(r.witness_to_certificate.ok, c.name + ": witness certificate: " + r.witness_to_certificate.message);
        backward.check(r.witness_round_trip.ok, c.name + ": witness round trip: " + r.witness_round_trip.message);
        if (set != &random_dual_) {
          backward.check(r.ip_certificate_to_tree.ok, c.name + ": IP certificate: " + r.ip_certificate_to_tree.message);
        }
        const Certificate cert = tree_to_certificate(c.relation, r.witness);
        for (const auto& v : neutral_variants(c.relation, cert)) {
          ++inflated;
          const auto check = check_certificate_to_tree(c.relation, v.certificate, true);
          backward.check(check.ok, c.name + ": inflated certificate: " + check.message);
        }
      }
    }
    SplitMix64 rng(config_.tree_seed);
    for (std::size_t k = 0; k < config_.random_tree_count; ++k) {
      const int rows = 1 + static_cast<int>(rng.below(4));
      const int cols = 1 + static_cast<int>(rng.below(4));
      const int colors = 2 + static_cast<int>(rng.below(2));
      const Relation t = random_relation(rng, rows, cols, colors);
      const PartitionTree tree = random_tree(rng, t);
      const std::string name = "random tree " + std::to_string(k);
      const auto valid = validate_tree(t, tree);
      const Certificate cert = tree_to_certificate(t, tree);
      const auto feasible = check_feasible(t, cert);
      forward.check(valid.valid && feasible.feasible,
                   name + ": " + (feasible.feasible ? valid.message : feasible.violations.front()));
      if (!feasible.feasible) continue;
      const auto back = check_certificate_to_tree(t, cert, true);
      backward.check(back.ok, name + ": " + back.message);
      for (const auto& v : neutral_variants(t, cert)) {
        ++inflated;
        const auto check = check_certificate_to_tree(t, v.certificate, true);
        backward.check(check.ok, name + ": inflated certificate: " + check.message);
      }
      // An increment that is not neutral must be refused.
      if (!cert.y.empty()) {
        Certificate bad = cert;
        bad.y.begin()->second += 1;
        const bool refused = !check_feasible(t, bad).feasible;
        if (refused) ++rejected;
        backward.check(refused, name + ": non-neutral y increment was accepted");
      }
    }
    backward.notes.push_back(std::to_string(inflated) + " neutrally inflated certificates converted, " +
                           std::to_string(rejected) + " non-neutral increments refused");
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    forward.seconds = seconds;
    backward.seconds = seconds;
  }

  CriterionResult criterion8() const {
    CriterionResult res{8, "every optimum re-verifies exactly; primal equals dual"};
    for (const auto* set : {&n2_, &n3_, &random_ip_, &random_dual_}) {
      for (const auto& [c, r] : *set) {
        std::string problems;
        for (const auto& p : r.solution_problems) problems += (problems.empty() ? "" : "; ") + p;
        res.check(r.solution_problems.empty(), c.name + ": " + problems);
        const bool all_optimal = r.ip.optimal() && r.relaxation.optimal() && r.qa.optimal() && r.dual.optimal();
        res.check(all_optimal, c.name + ": a solve did not reach optimality");
      }
      expect(res, *set, "primal-equals-dual");
    }
    return res;
  }

  AcceptanceConfig config_;
  Reports n2_;
  Reports n3_;
  Reports random_ip_;
  Reports random_dual_;
  double analysis_seconds_ = 0;
};

}  // namespace kwpart
