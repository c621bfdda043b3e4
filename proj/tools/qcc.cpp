#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qcc/checks.hpp"
#include "qcc/report.hpp"

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kParse = 2, kValidation = 3, kDiagnostic = 4 };

int runCommand(const std::string& path, int depth, int order, const std::string& outPath) {
  qcc::Scenario s;
  try {
    s = qcc::loadScenario(path);
  } catch (const qcc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const qcc::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidation;
  }
  qcc::Json out;
  try {
    if (depth >= 0) s.depth = depth;
    if (order > 0) qcc::changeOrder(s, order);
    if (!outPath.empty()) s.out = outPath;
    out = qcc::runScenario(s);
  } catch (const qcc::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidation;
  }
  std::string text = out.dump(2) + "\n";
  if (s.out) {
    std::ofstream file(*s.out, std::ios::binary);
    if (!file) {
      std::cerr << "cannot write " << *s.out << "\n";
      return kFailure;
    }
    file << text;
  } else {
    std::cout << text;
  }
  if (out["status"] != "ok") {
    std::cerr << "diagnostic: " << out["diagnostic"].get<std::string>() << "\n";
    return kDiagnostic;
  }
  return kOk;
}

int suiteCommand(const std::string& name, const std::string& scenarioDir, int serreDefect) {
  std::vector<qcc::CheckResult> results;
  if (name == "invariants") {
    results = qcc::invariantSuite(serreDefect);
  } else if (name == "acceptance") {
    results = qcc::acceptanceSuite(scenarioDir);
  } else {
    std::cerr << "unknown suite '" << name << "' (expected invariants or acceptance)\n";
    return kParse;
  }
  bool ok = true;
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name;
    if (!r.detail.empty()) std::cout << ": " << r.detail;
    std::cout << "\n";
    ok = ok && r.passed;
  }
  return ok ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qcc: exact computations for quantum conjugacy classes"};
  app.require_subcommand(1);

  std::string scenarioPath, outPath;
  int depth = -1, order = 0;
  auto* run = app.add_subcommand("run", "Run one scenario file and emit JSON");
  run->add_option("scenario", scenarioPath, "Scenario file")->required();
  run->add_option("--depth", depth, "Override the scenario depth");
  run->add_option("--N", order, "Override the cyclotomic order (a multiple of the scenario N)");
  run->add_option("--out", outPath, "Write the JSON here instead of stdout");

  std::string suiteName, scenarioDir = QCC_SCENARIO_DIR;
  int serreDefect = -1;
  auto* suite = app.add_subcommand("suite", "Run the invariants or acceptance suite");
  suite->add_option("name", suiteName, "invariants or acceptance")->required();
  suite->add_option("--scenarios", scenarioDir, "Directory with the shipped scenario pack");
  suite->add_option("--serre-defect", serreDefect, "Perturb one Serre relation (mutation fixture)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kOk : kParse;
  }
  if (run->parsed()) return runCommand(scenarioPath, depth, order, outPath);
  if (suiteName.empty()) {
    std::cerr << "empty suite name\n";
    return kParse;
  }
  return suiteCommand(suiteName, scenarioDir, serreDefect);
}
