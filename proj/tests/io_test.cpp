#include <random>
#include <sstream>

#include "doctest.h"
#include "qcc/checks.hpp"

using namespace qcc;

namespace {

Scenario parse(const std::string& text) {
  std::istringstream in(text);
  return parseScenario(in);
}

const std::string kBase = "name = t\ntype = A\nrank = 1\nN = 8\ntorus = [2, 6]\nsigns = [+]\ntask = character\n";

}  // namespace

TEST_CASE("shipped scenarios parse, validate and round-trip") {
  auto files = checks::scenarioFiles(QCC_SCENARIO_DIR);
  CHECK(files.size() == 7);
  for (const auto& f : files) {
    CAPTURE(f);
    auto s = checks::shippedScenario(QCC_SCENARIO_DIR, f);
    CHECK_NOTHROW(validate(s));
    CHECK(writeScenario(parse(writeScenario(s))) == writeScenario(s));
  }
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse(kBase + "colour = blue\n"), ParseError);
  CHECK_THROWS_AS(parse(kBase + "rank = 2\n"), ParseError);
  CHECK_THROWS_AS(parse(kBase + "depth 3\n"), ParseError);
  CHECK_THROWS_AS(parse("name = t\ntype = A\nrank = one\nN = 8\ntorus = [2, 6]\nsigns = [+]\ntask = character\n"),
                  ParseError);
}

TEST_CASE("validation errors") {
  CHECK_THROWS_AS(parse("name = t\ntype = A\nrank = 1\nN = 8\ntorus = [2, x]\nsigns = [+]\ntask = character\n"),
                  ValidationError);
  auto s = parse(kBase);
  CHECK_NOTHROW(validate(s));
  auto bad = s;
  bad.torus = {2, 6, 0};
  CHECK_THROWS_AS(validate(bad), ValidationError);
  bad = s;
  bad.torus = {2, 9};
  CHECK_THROWS_AS(validate(bad), ValidationError);
  bad = s;
  bad.signs = {1, 1};
  CHECK_THROWS_AS(validate(bad), ValidationError);
  bad = s;
  bad.depth = 9;
  CHECK_THROWS_AS(validate(bad), ValidationError);
  bad = s;
  bad.task = "everything";
  CHECK_THROWS_AS(validate(bad), ValidationError);
  bad = s;
  bad.module = "spin";
  CHECK_THROWS_AS(validate(bad), ValidationError);
  bad = s;
  bad.xi = {Rat(1, 2), Rat(0)};
  CHECK_THROWS_AS(validate(bad), ValidationError);
  bad = s;
  bad.torus = {1, 0};
  CHECK_THROWS_AS(validate(bad), ValidationError);
}

TEST_CASE("changing N rescales the torus") {
  auto s = parse(kBase);
  changeOrder(s, 16);
  CHECK(s.order == 16);
  CHECK(s.torus == std::vector<int>{4, 12});
  CHECK_THROWS_AS(changeOrder(s, 24), ValidationError);
}

TEST_CASE("scalar text round-trips") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> coef(-5, 5), expo(-6, 6), unity(0, 11);
  for (int trial = 0; trial < 50; ++trial) {
    LaurentV num, den(1L);
    for (int k = 0; k < 3; ++k) num += LaurentV::monomial(Cyclotomic::rootOfUnity(12, unity(rng)) * Cyclotomic(coef(rng)), expo(rng));
    den += LaurentV::monomial(Cyclotomic(Rat(coef(rng), 3)), expo(rng));
    if (den.isZero()) continue;
    FieldElem x(num, den);
    CHECK(parseFieldElem(toText(x)) == x);
    CHECK(toText(parseFieldElem(toText(x))) == toText(x));
  }
  CHECK(toText(FieldElem(Cyclotomic::rootOfUnity(8, 1))).rfind("z8:", 0) == 0);
  CHECK(toText(qnum(Rat(2))).find('z') == std::string::npos);
  CHECK_THROWS_AS(parseFieldElem("(1)*v^"), ParseError);
}

TEST_CASE("result envelopes are deterministic") {
  auto s = checks::shippedScenario(QCC_SCENARIO_DIR, "a1_sphere.scn");
  auto a = runScenario(s), b = runScenario(s);
  CHECK(a.dump() == b.dump());
  CHECK(a["schema"] == kSchemaVersion);
  CHECK(a["status"] == "ok");
  CHECK(a["diagnostic"].is_null());
}
