#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kwpart/kwpart.hpp"

namespace {

using nlohmann::ordered_json;
using namespace kwpart;

enum Exit : int {
  kOk = 0,
  kVerificationFailed = 1,
  kUsage = 2,
  kConstant = 3,
  kGuard = 4,
  kIo = 5,
  kInternal = 6,
};

struct IoError : Error {
  using Error::Error;
};

struct InputOptions {
  std::string fn;
  std::string truth_table;
  std::string relation;
  std::uint64_t limit = kDefaultRectangleLimit;
  bool raw_psi = false;
};

struct Input {
  std::string description;
  Relation relation;
  std::optional<TruthTable> function;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read `" + path + "`");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw IoError("cannot write `" + path + "`");
}

void add_input_options(CLI::App* cmd, InputOptions& in) {
  auto* group = cmd->add_option_group("input");
  group->add_option("--fn", in.fn, "truth table as a 0/1 string of length 2^n (bit j = f(j), x1 most significant)");
  group->add_option("--truth-table", in.truth_table, "truth-table file: `n=<k>` then the bit string");
  group->add_option("--relation", in.relation, "relation file");
  group->require_option(1);
  cmd->add_option("--limit-rects", in.limit, "rectangle guard")->capture_default_str();
  cmd->add_flag("--raw-psi", in.raw_psi, "keep one psi variable per (cell, rectangle) in QA");
}

Input load(const InputOptions& in) {
  if (!in.relation.empty()) return {"relation " + in.relation, parse_relation(read_file(in.relation)), std::nullopt};
  const TruthTable f = in.fn.empty() ? TruthTable::parse(read_file(in.truth_table)) : TruthTable::from_bits(in.fn);
  return {"fn " + f.to_string(), build_relation(f), f};
}

ordered_json lp_json(const LpSolution& s) {
  ordered_json j;
  j["status"] = to_string(s.status);
  j["objective"] = s.optimal() ? ordered_json(s.objective.get_str()) : ordered_json(nullptr);
  j["pivots"] = s.pivots;
  return j;
}

ordered_json conversion_json(const ConversionCheck& c) {
  return {{"ok", c.ok},
          {"leaves", c.leaves},
          {"merges", c.merges},
          {"feasibility_checks", c.feasibility_checks},
          {"message", c.message}};
}

ordered_json report_json(const RunReport& r, bool timings) {
  ordered_json j;
  j["input"] = r.input;
  j["function"] = r.function ? ordered_json(r.function->to_string()) : ordered_json(nullptr);
  j["relation"] = {{"rows", r.rows},
                   {"cols", r.cols},
                   {"colors", r.colors},
                   {"rectangles", r.rectangles},
                   {"monochromatic", r.monochromatic},
                   {"partitions", r.partitions}};
  j["partition_number"] = r.partition_number;
  j["formula_size"] = r.formula_size ? ordered_json(*r.formula_size) : ordered_json(nullptr);
  j["formula"] = r.formula ? ordered_json(r.formula->to_string()) : ordered_json(nullptr);
  j["lp_relaxation"] = lp_json(r.relaxation);
  j["ip"] = {{"status", to_string(r.ip.status)},
             {"objective", r.ip.optimal() ? ordered_json(r.ip.objective.get_str()) : ordered_json(nullptr)},
             {"nodes", r.ip.node_count},
             {"root_bound", r.ip.root_bound ? ordered_json(r.ip.root_bound->get_str()) : ordered_json(nullptr)}};
  j["qa"] = lp_json(r.qa);
  j["dual"] = lp_json(r.dual);
  j["dual_structure"] = {{"complete", r.equivalence.complete},
                         {"matched", r.equivalence.matched},
                         {"mismatched", r.equivalence.mismatched}};
  j["certificates"] = {{"witness_to_certificate", conversion_json(r.witness_to_certificate)},
                       {"witness_round_trip", conversion_json(r.witness_round_trip)},
                       {"ip_certificate_to_tree", conversion_json(r.ip_certificate_to_tree)}};
  j["solution_problems"] = r.solution_problems;
  ordered_json ids = ordered_json::array();
  for (const auto& id : r.identities) {
    ids.push_back({{"name", id.name},
                   {"lhs", id.lhs},
                   {"lhs_value", id.lhs_value},
                   {"rhs", id.rhs},
                   {"rhs_value", id.rhs_value},
                   {"holds", id.holds}});
  }
  j["identities"] = ids;
  if (timings) {
    ordered_json t = ordered_json::array();
    for (const auto& s : r.timings) t.push_back({{"stage", s.stage}, {"seconds", s.seconds}});
    j["timings"] = t;
  }
  j["ok"] = r.ok();
  return j;
}

void print_report(std::ostream& out, const RunReport& r, const Relation& t) {
  out << "input            " << r.input << "\n";
  out << "matrix           " << r.rows << " x " << r.cols << ", " << r.colors << " colors, " << r.rectangles
      << " rectangles (" << r.monochromatic << " monochromatic), " << r.partitions << " partitions\n";
  out << "C^P              " << r.partition_number << "\n";
  if (r.formula_size) out << "L(f)             " << *r.formula_size << "  " << r.formula->to_string() << "\n";
  out << "IP               " << detail::value_string(r.ip) << "  (" << r.ip.node_count << " nodes)\n";
  out << "LP relaxation    " << detail::value_string(r.relaxation) << "\n";
  out << "QA               " << detail::value_string(r.qa) << "\n";
  out << "dual relaxation  " << detail::value_string(r.dual) << "\n";
  out << "dual structure   " << (r.equivalence.complete ? "bijection" : "MISMATCH") << " (" << r.equivalence.matched
      << " matched, " << r.equivalence.mismatched << " mismatched)\n";
  out << "identities\n";
  for (const auto& id : r.identities) {
    out << "  " << (id.holds ? "ok    " : "FAIL  ") << id.name << ": " << id.lhs << " = " << id.lhs_value << ", "
        << id.rhs << " = " << id.rhs_value << "\n";
  }
  for (const auto& p : r.solution_problems) out << "  FAIL  " << p << "\n";
  out << "witness tree\n";
  std::istringstream tree(tree_to_text(t, r.witness));
  for (std::string line; std::getline(tree, line);) out << "  " << line << "\n";
  double total = 0;
  for (const auto& s : r.timings) total += s.seconds;
  out << "time             " << total << " s\n";
}

struct AnalyzeArgs {
  InputOptions input;
  bool debug = false;
  bool n4 = false;
  bool json = false;
  bool no_timings = false;
  std::string witness;
  std::string witness_dot;
  std::string formula_dot;
  std::string certificate;
};

int cmd_analyze(const AnalyzeArgs& a) {
  const Input in = load(a.input);
  AnalyzeOptions options;
  options.rectangle_limit = a.input.limit;
  options.raw_psi = a.input.raw_psi;
  options.debug_certificates = a.debug;
  options.formula_n4 = a.n4;
  const RunReport r = analyze(in.relation, in.description, in.function, options);
  if (a.json) {
    std::cout << report_json(r, !a.no_timings).dump(2) << "\n";
  } else {
    print_report(std::cout, r, in.relation);
  }
  if (!a.witness.empty()) write_file(a.witness, tree_to_text(in.relation, r.witness));
  if (!a.witness_dot.empty()) write_file(a.witness_dot, tree_to_dot(in.relation, r.witness));
  if (!a.formula_dot.empty()) {
    if (!r.formula) throw ModelError("no formula witness for this input");
    write_file(a.formula_dot, r.formula->to_dot());
  }
  if (!a.certificate.empty()) write_file(a.certificate, format_certificate(tree_to_certificate(in.relation, r.witness)));
  return r.ok() ? kOk : kVerificationFailed;
}

struct ExportArgs {
  InputOptions input;
  std::string which;
  std::string path = "-";
};

int cmd_export(const ExportArgs& a) {
  const Input in = load(a.input);
  MilpModel m;
  if (a.which == "pn") {
    m = build_pn(in.relation, a.input.limit).model;
  } else if (a.which == "relaxation") {
    m = relax(build_pn(in.relation, a.input.limit).model);
  } else if (a.which == "dual") {
    m = dualize(relax(build_pn(in.relation, a.input.limit).model));
  } else {
    m = build_qa(in.relation, a.input.raw_psi, a.input.limit).model;
  }
  write_file(a.path, to_lp_string(m));
  return kOk;
}

struct VerifyArgs {
  std::string scope;
  std::string file;
  std::uint64_t seed = 1;
  std::size_t count = 50;
  std::string dims = "3x3";
  int colors = 3;
  bool debug = true;
  bool json = false;
  bool no_timings = false;
  unsigned jobs = 1;
  std::uint64_t limit = kDefaultRectangleLimit;
};

// Lines are truth tables (0/1 strings) or relation file paths relative to the
// scope file; blank lines and `#` comments are skipped.
std::vector<Case> load_scope_file(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<Case> cases;
  const auto base = std::filesystem::path(path).parent_path();
  for (std::string line; std::getline(in, line);) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line.erase(0, line.find_first_not_of(" \t\r"));
    line.erase(line.find_last_not_of(" \t\r") + 1);
    if (line.empty()) continue;
    if (line.find_first_not_of("01") == std::string::npos) {
      const TruthTable f = TruthTable::from_bits(line);
      cases.push_back(function_case("fn " + f.to_string(), f));
    } else {
      const auto p = (base / line).string();
      cases.push_back({"relation " + line, parse_relation(read_file(p)), std::nullopt});
    }
  }
  return cases;
}

struct CaseOutcome {
  RunReport report;
  std::size_t inflated = 0;
  std::vector<std::string> failures;
  std::string error;
  int error_code = kOk;
};

CaseOutcome run_case(const Case& c, const AnalyzeOptions& options) {
  CaseOutcome out;
  try {
    out.report = analyze(c.relation, c.name, c.function, options);
    for (const auto& id : out.report.identities) {
      if (!id.holds) out.failures.push_back(id.name + " (" + id.lhs + " = " + id.lhs_value + ", " + id.rhs + " = " + id.rhs_value + ")");
    }
    for (const auto& p : out.report.solution_problems) out.failures.push_back(p);
    const auto cert = tree_to_certificate(c.relation, out.report.witness);
    for (const auto& v : neutral_variants(c.relation, cert)) {
      ++out.inflated;
      const auto check = check_certificate_to_tree(c.relation, v.certificate, options.debug_certificates);
      if (!check.ok) out.failures.push_back("inflated certificate: " + check.message);
    }
  } catch (const SizeGuardError& e) {
    out.error = e.what();
    out.error_code = kGuard;
  } catch (const Error& e) {
    out.error = e.what();
    out.error_code = kVerificationFailed;
  }
  return out;
}

int cmd_verify(const VerifyArgs& a) {
  if (a.scope == "acceptance") {
    AcceptanceSuite suite;
    bool all = true;
    for (const auto& r : suite.run()) {
      all = all && r.passed;
      std::cout << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.title << " [" << r.checked
                << " checks]\n";
      for (const auto& f : r.failures) std::cout << "       failed: " << f << "\n";
    }
    return all ? kOk : kVerificationFailed;
  }

  std::vector<Case> cases;
  if (a.scope == "n2-exhaustive") {
    cases = n2_exhaustive();
  } else if (a.scope == "n3-curated") {
    cases = n3_curated();
  } else if (a.scope == "file") {
    if (a.file.empty()) throw ParseError("verify file needs a path");
    cases = load_scope_file(a.file);
  } else {
    int rows = 0;
    int cols = 0;
    char x = 0;
    std::istringstream d(a.dims);
    if (!(d >> rows >> x >> cols) || x != 'x' || rows < 1 || cols < 1 || !d.eof()) {
      throw ParseError("--dims must look like RxC, got `" + a.dims + "`");
    }
    cases = random_relation_cases(a.seed, a.count, rows, cols, a.colors);
  }
  if (cases.empty()) {
    std::cerr << "warning: scope is empty; nothing to verify\n";
    if (a.json) std::cout << ordered_json{{"scope", a.scope}, {"cases", ordered_json::array()}, {"passed", 0}, {"total", 0}, {"ok", true}}.dump(2) << "\n";
    return kOk;
  }

  AnalyzeOptions options;
  options.debug_certificates = a.debug;
  options.rectangle_limit = a.limit;
  std::vector<CaseOutcome> outcomes(cases.size());
  const unsigned jobs = std::max(1U, a.jobs);
  for (std::size_t start = 0; start < cases.size(); start += jobs) {
    std::vector<std::future<CaseOutcome>> batch;
    const std::size_t end = std::min(cases.size(), start + jobs);
    for (std::size_t k = start; k < end; ++k) {
      batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, run_case, std::cref(cases[k]),
                                 std::cref(options)));
    }
    for (std::size_t k = start; k < end; ++k) outcomes[k] = batch[k - start].get();
  }

  std::size_t passed = 0;
  int code = kOk;
  ordered_json json_cases = ordered_json::array();
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto& o = outcomes[k];
    const bool ok = o.error.empty() && o.failures.empty();
    if (ok) ++passed;
    if (!o.error.empty() && code == kOk) code = o.error_code;
    if (a.json) {
      ordered_json j = o.error.empty() ? report_json(o.report, !a.no_timings) : ordered_json{{"input", cases[k].name}};
      j["inflated_certificates"] = o.inflated;
      j["failures"] = o.failures;
      j["error"] = o.error.empty() ? ordered_json(nullptr) : ordered_json(o.error);
      j["ok"] = ok;
      json_cases.push_back(std::move(j));
      continue;
    }
    std::cout << (ok ? "PASS " : "FAIL ") << cases[k].name;
    if (o.error.empty()) {
      const auto& r = o.report;
      std::cout << "  C^P=" << r.partition_number;
      if (r.formula_size) std::cout << " L=" << *r.formula_size;
      std::cout << " IP=" << detail::value_string(r.ip) << " LP=" << detail::value_string(r.relaxation)
                << " QA=" << detail::value_string(r.qa) << " dual=" << detail::value_string(r.dual)
                << " nodes=" << r.ip.node_count << " inflated=" << o.inflated;
    } else {
      std::cout << "  error: " << o.error;
    }
    std::cout << "\n";
    for (const auto& f : o.failures) std::cout << "       failed: " << f << "\n";
  }
  if (code == kOk && passed != cases.size()) code = kVerificationFailed;
  if (a.json) {
    std::cout << ordered_json{{"scope", a.scope}, {"cases", json_cases}, {"passed", passed}, {"total", cases.size()},
                              {"ok", passed == cases.size()}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << passed << "/" << cases.size() << " cases pass\n";
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Protocol partition number, PN/QA linear programs and certificate conversions"};
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  auto* analyze_cmd = app.add_subcommand("analyze", "run every pipeline on one input and report");
  add_input_options(analyze_cmd, analyze_args.input);
  analyze_cmd->add_flag("--debug-certificates", analyze_args.debug, "check feasibility after every merge");
  analyze_cmd->add_flag("--n4", analyze_args.n4, "run the formula oracle for n = 4");
  analyze_cmd->add_flag("--json", analyze_args.json, "print the report as JSON");
  analyze_cmd->add_flag("--no-timings", analyze_args.no_timings, "omit timings from JSON");
  analyze_cmd->add_option("--witness", analyze_args.witness, "write the DP witness tree as text");
  analyze_cmd->add_option("--witness-dot", analyze_args.witness_dot, "write the DP witness tree as DOT");
  analyze_cmd->add_option("--formula-dot", analyze_args.formula_dot, "write the minimum formula as DOT");
  analyze_cmd->add_option("--certificate", analyze_args.certificate, "write the witness certificate");

  ExportArgs export_args;
  auto* export_cmd = app.add_subcommand("export", "write a model in LP file format");
  export_cmd->add_option("model", export_args.which, "pn | qa | relaxation | dual")
      ->required()
      ->check(CLI::IsMember({"pn", "qa", "relaxation", "dual"}));
  export_cmd->add_option("path", export_args.path, "output file, `-` for stdout")->capture_default_str();
  add_input_options(export_cmd, export_args.input);

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "check every identity over a scope of inputs");
  verify_cmd->add_option("scope", verify_args.scope, "n2-exhaustive | n3-curated | file | random-relations | acceptance")
      ->required()
      ->check(CLI::IsMember({"n2-exhaustive", "n3-curated", "file", "random-relations", "acceptance"}));
  verify_cmd->add_option("path", verify_args.file, "scope file (for `file`)");
  verify_cmd->add_option("--seed", verify_args.seed)->capture_default_str();
  verify_cmd->add_option("--count", verify_args.count)->capture_default_str();
  verify_cmd->add_option("--dims", verify_args.dims, "RxC")->capture_default_str();
  verify_cmd->add_option("--colors", verify_args.colors)->capture_default_str()->check(CLI::Range(1, 31));
  verify_cmd->add_option("--jobs", verify_args.jobs, "worker threads")->capture_default_str();
  verify_cmd->add_option("--limit-rects", verify_args.limit, "rectangle guard")->capture_default_str();
  verify_cmd->add_flag("!--no-debug-certificates", verify_args.debug, "skip intermediate feasibility checks");
  verify_cmd->add_flag("--json", verify_args.json, "print results as JSON");
  verify_cmd->add_flag("--no-timings", verify_args.no_timings, "omit timings from JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(analyze_args);
    if (*export_cmd) return cmd_export(export_args);
    return cmd_verify(verify_args);
  } catch (const ConstantFunctionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConstant;
  } catch (const SizeGuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kGuard;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConsistencyError& e) {
    std::cerr << "internal consistency fault: " << e.what() << "\n";
    return kInternal;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
