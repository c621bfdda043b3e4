#include <iostream>

#include "qcc/checks.hpp"

int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : QCC_SCENARIO_DIR;
  std::cout << "tolerance: " << qcc::kTolerance << "\n";
  int failed = 0;
  for (const auto& r : qcc::acceptanceSuite(dir)) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name;
    if (!r.detail.empty()) std::cout << " [" << r.detail << "]";
    std::cout << "\n";
    failed += r.passed ? 0 : 1;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << "\n";
  return failed ? 1 : 0;
}
