#include <cstdio>
#include <iostream>

#include "kwpart/verification.hpp"

int main(int argc, char** argv) {
  const bool verbose = argc > 1 && std::string(argv[1]) == "-v";
  kwpart::AcceptanceConfig config;
  if (verbose) {
    config.on_case = [](const kwpart::Case& c, const kwpart::RunReport& r) {
      std::cout << "  case " << c.name << ": C^P = " << r.partition_number << (r.ok() ? " ok" : " FAILED") << "\n";
    };
  }
  kwpart::AcceptanceSuite suite(config);
  const auto results = suite.run();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    std::printf("%s criterion %d: %s [%zu checks]\n", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str(), r.checked);
    for (const auto& note : r.notes) std::printf("       note: %s\n", note.c_str());
    for (const auto& f : r.failures) std::printf("       failed: %s\n", f.c_str());
  }
  std::printf("analysis time %.2f s; %s\n", suite.analysis_seconds(), all ? "all criteria pass" : "some criteria FAIL");
  return all ? 0 : 1;
}
