#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kwpart/certificates.hpp"
#include "kwpart/formula_oracle.hpp"
#include "kwpart/formulations.hpp"
#include "kwpart/partition_number.hpp"
#include "kwpart/simplex.hpp"

namespace kwpart {

struct AnalyzeOptions {
  std::uint64_t rectangle_limit = kDefaultRectangleLimit;
  bool raw_psi = false;
  bool debug_certificates = false;
  /// Run the formula oracle for n = 4 (n <= 3 always runs).
  bool formula_n4 = false;
  IpOptions ip;
};

struct StageTiming {
  std::string stage;
  double seconds = 0;
};

/// One equality between two computed numbers, re-derived when the report is built.
struct Identity {
  std::string name;
  std::string lhs;
  std::string rhs;
  std::string lhs_value;
  std::string rhs_value;
  bool holds = false;
};

struct ConversionCheck {
  bool ok = false;
  std::size_t leaves = 0;
  std::size_t merges = 0;
  std::size_t feasibility_checks = 0;
  std::string message;
};

struct RunReport {
  std::string input;
  std::optional<TruthTable> function;
  int rows = 0;
  int cols = 0;
  int colors = 0;
  std::size_t rectangles = 0;
  std::size_t monochromatic = 0;
  std::size_t partitions = 0;

  std::uint64_t partition_number = 0;
  PartitionTree witness;
  std::optional<int> formula_size;
  std::optional<Formula> formula;

  LpSolution relaxation;  // solve_lp(relax(PN))
  IpSolution ip;          // solve_ip(PN)
  LpSolution qa;          // solve_lp(QA)
  LpSolution dual;        // solve_lp(dualize(relax(PN)))
  EquivalenceReport equivalence;

  ConversionCheck witness_to_certificate;    // DP witness -> certificate, feasibility
  ConversionCheck witness_round_trip;        // that certificate -> tree
  ConversionCheck ip_certificate_to_tree;    // IP optimum -> tree
  std::vector<std::string> solution_problems;  // independent re-verification failures

  std::vector<Identity> identities;
  std::vector<StageTiming> timings;

  bool ok() const {
    if (!solution_problems.empty()) return false;
    for (const auto& id : identities) {
      if (!id.holds) return false;
    }
    return true;
  }
};

namespace detail {

inline std::string value_string(const LpSolution& s) {
  return s.optimal() ? s.objective.get_str() : to_string(s.status);
}

inline std::string value_string(const IpSolution& s) {
  return s.optimal() ? s.objective.get_str() : to_string(s.status);
}

class Stopwatch {
 public:
  explicit Stopwatch(std::vector<StageTiming>& out) : out_(out) {}
  template <class F>
  decltype(auto) operator()(std::string stage, F&& body) {
    const auto start = std::chrono::steady_clock::now();
    struct Record {
      std::vector<StageTiming>& out;
      std::string stage;
      std::chrono::steady_clock::time_point start;
      ~Record() {
        out.push_back({std::move(stage), std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()});
      }
    } record{out_, std::move(stage), start};
    return body();
  }

 private:
  std::vector<StageTiming>& out_;
};

inline ConversionCheck run_certificate_to_tree(const Relation& t, const Certificate& c, bool debug) {
  ConversionCheck check;
  try {
    CertificateToTreeTrace trace;
    const PartitionTree tree = certificate_to_tree(t, c, {debug}, &trace);
    const auto validation = validate_tree(t, tree);
    check.leaves = validation.leaf_count;
    check.merges = trace.merges;
    check.feasibility_checks = trace.feasibility_checks;
    const auto expected = static_cast<std::size_t>(c.size());
    if (!validation.valid) {
      check.message = validation.message;
    } else if (tree.leaves() != c.used()) {
      check.message = "leaf set differs from {R : x[R] = 1}";
    } else if (check.merges + 1 != expected) {
      check.message = std::to_string(check.merges) + " merges for |x| = " + std::to_string(expected);
    } else if (debug && check.feasibility_checks != check.merges) {
      check.message = std::to_string(check.feasibility_checks) + " intermediate checks for " +
                      std::to_string(check.merges) + " merges";
    } else {
      check.ok = true;
    }
  } catch (const Error& e) {
    check.message = e.what();
  }
  return check;
}

}  // namespace detail

/// Converts `c` back into a tree and checks leaf set, merge count and (in
/// debug mode) feasibility after every merge.
inline ConversionCheck check_certificate_to_tree(const Relation& t, const Certificate& c, bool debug = true) {
  return detail::run_certificate_to_tree(t, c, debug);
}

/// Runs every pipeline on one relation: DP, formula oracle (functions only),
/// PN as IP and LP, QA, the dual of the relaxation, the structural dual check
/// and both certificate conversions. Identities are computed from the numbers
/// obtained here, never assumed.
inline RunReport analyze(const Relation& t, std::string input, std::optional<TruthTable> function,
                         const AnalyzeOptions& options = {}) {
  RunReport report;
  report.input = std::move(input);
  report.function = function;
  report.rows = t.row_count();
  report.cols = t.col_count();
  report.colors = t.color_count();
  detail::Stopwatch time(report.timings);

  const auto sets = time("rectangles", [&] { return RectangleSets::of(t, options.rectangle_limit); });
  report.rectangles = sets.all.size();
  report.monochromatic = sets.monochromatic.size();
  report.partitions = sets.gamma.size();

  time("partition-number", [&] {
    auto dp = protocol_partition_number(t, options.rectangle_limit);
    report.partition_number = dp.value;
    report.witness = std::move(dp.witness);
  });

  if (function && (function->arity() <= 3 || (function->arity() == 4 && options.formula_n4))) {
    time("formula-size", [&] {
      FunctionClass oracle(function->arity());
      report.formula_size = oracle.formula_size(*function);
      if (report.formula_size) report.formula = oracle.witness(*function);
    });
  }

  const PnInstance pn = time("build-pn", [&] { return build_pn(t, options.rectangle_limit); });
  const MilpModel relaxed = relax(pn.model);
  report.ip = time("solve-ip", [&] { return solve_ip(pn.model, options.ip); });
  report.relaxation = time("solve-relaxation", [&] { return solve_lp(relaxed, options.ip.lp); });
  const QaInstance qa = time("build-qa", [&] { return build_qa(t, options.raw_psi, options.rectangle_limit); });
  report.qa = time("solve-qa", [&] { return solve_lp(qa.model, options.ip.lp); });
  const MilpModel dual = dualize(relaxed);
  report.dual = time("solve-dual", [&] { return solve_lp(dual, options.ip.lp); });
  report.equivalence = time("dual-structure", [&] { return check_corollary1(t, options.rectangle_limit); });

  auto reverify = [&](const std::string& what, const MilpModel& m, const std::vector<Rational>& values,
                      bool integral) {
    const auto check = verify_solution(m, values, integral);
    for (const auto& v : check.violations) report.solution_problems.push_back(what + ": " + v);
  };
  time("reverify", [&] {
    if (report.ip.optimal()) reverify("ip", pn.model, report.ip.values, true);
    if (report.relaxation.optimal()) reverify("relaxation", relaxed, report.relaxation.values, false);
    if (report.qa.optimal()) reverify("qa", qa.model, report.qa.values, false);
    if (report.dual.optimal()) reverify("dual", dual, report.dual.values, false);
  });

  time("certificates", [&] {
    const Certificate from_tree = tree_to_certificate(t, report.witness);
    const auto feasible = check_feasible(t, from_tree);
    report.witness_to_certificate.ok = feasible.feasible;
    report.witness_to_certificate.leaves = report.witness.leaf_count();
    if (!feasible.feasible) report.witness_to_certificate.message = feasible.violations.front();
    if (feasible.feasible) {
      report.witness_round_trip = detail::run_certificate_to_tree(t, from_tree, options.debug_certificates);
    } else {
      report.witness_round_trip.message = "skipped: witness certificate infeasible";
    }
    if (report.ip.optimal()) {
      try {
        const Certificate from_ip = certificate_from_assignment(pn, report.ip.values);
        report.ip_certificate_to_tree = detail::run_certificate_to_tree(t, from_ip, options.debug_certificates);
      } catch (const Error& e) {
        report.ip_certificate_to_tree.message = e.what();
      }
    } else {
      report.ip_certificate_to_tree.message = "skipped: no IP optimum";
    }
  });

  auto identity = [&](std::string name, std::string lhs, std::string lhs_value, std::string rhs,
                      std::string rhs_value, bool holds) {
    report.identities.push_back(
        {std::move(name), std::move(lhs), std::move(rhs), std::move(lhs_value), std::move(rhs_value), holds});
  };
  const Rational cp(static_cast<unsigned long>(report.partition_number));
  const std::string cp_text = cp.get_str();
  if (report.formula_size) {
    identity("partition-number-equals-formula-size", "C^P", cp_text, "L", std::to_string(*report.formula_size),
             cp == *report.formula_size);
  }
  identity("qa-equals-partition-number", "QA", detail::value_string(report.qa), "C^P", cp_text,
           report.qa.optimal() && report.qa.objective == cp);
  identity("ip-equals-partition-number", "IP", detail::value_string(report.ip), "C^P", cp_text,
           report.ip.optimal() && report.ip.objective == cp);
  identity("no-integrality-gap", "LP", detail::value_string(report.relaxation), "IP", detail::value_string(report.ip),
           report.relaxation.optimal() && report.ip.optimal() && report.relaxation.objective == report.ip.objective);
  identity("dual-equals-qa", "dual", detail::value_string(report.dual), "QA", detail::value_string(report.qa),
           report.dual.optimal() && report.qa.optimal() && report.dual.objective == report.qa.objective);
  identity("primal-equals-dual", "LP", detail::value_string(report.relaxation), "dual",
           detail::value_string(report.dual),
           report.relaxation.optimal() && report.dual.optimal() &&
               report.relaxation.objective == report.dual.objective);
  identity("dual-structure-matches-qa", "matched", std::to_string(report.equivalence.matched), "mismatched",
           std::to_string(report.equivalence.mismatched), report.equivalence.complete);
  identity("tree-to-certificate-feasible", "leaves", std::to_string(report.witness_to_certificate.leaves),
           "C^P", cp_text, report.witness_to_certificate.ok && report.witness_to_certificate.leaves == report.partition_number);
  identity("witness-round-trip", "leaves", std::to_string(report.witness_round_trip.leaves), "C^P", cp_text,
           report.witness_round_trip.ok);
  identity("ip-certificate-to-tree", "leaves", std::to_string(report.ip_certificate_to_tree.leaves), "C^P", cp_text,
           report.ip_certificate_to_tree.ok && report.ip_certificate_to_tree.leaves == report.partition_number);
  return report;
}

inline RunReport analyze(const TruthTable& f, const AnalyzeOptions& options = {}) {
  return analyze(build_relation(f), "fn " + f.to_string(), f, options);
}

}  // namespace kwpart
