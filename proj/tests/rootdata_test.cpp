#include "doctest.h"
#include "qcc/rootdata.hpp"

using namespace qcc;

TEST_CASE("positive root counts") {
  for (int n = 1; n <= 5; ++n) {
    CHECK(RootSystem(RootType::A, n).positive().size() == static_cast<std::size_t>(n * (n + 1) / 2));
    if (n >= 2) CHECK(RootSystem(RootType::B, n).positive().size() == static_cast<std::size_t>(n * n));
    if (n >= 2) CHECK(RootSystem(RootType::C, n).positive().size() == static_cast<std::size_t>(n * n));
    if (n >= 3) CHECK(RootSystem(RootType::D, n).positive().size() == static_cast<std::size_t>(n * (n - 1)));
  }
}

TEST_CASE("Kostant partition function matches the sympy oracle") {
  struct Case {
    RootType type;
    int rank;
    RootVec mu;
    long expected;
  };
  for (const auto& c : std::vector<Case>{{RootType::A, 3, {2, 2, 2}, 10},
                                         {RootType::A, 3, {1, 2, 1}, 5},
                                         {RootType::B, 2, {2, 2}, 4},
                                         {RootType::B, 2, {2, 4}, 6},
                                         {RootType::C, 2, {2, 3}, 4},
                                         {RootType::D, 4, {1, 2, 1, 1}, 15},
                                         {RootType::B, 3, {1, 2, 2}, 11},
                                         {RootType::C, 3, {1, 2, 2}, 9}}) {
    RootSystem rs(c.type, c.rank);
    CAPTURE(rs.label());
    CHECK(kostant(rs, c.mu) == c.expected);
  }
}

TEST_CASE("rho pairs to one with every simple coroot") {
  for (auto [type, rank] : std::vector<std::pair<RootType, int>>{
           {RootType::A, 3}, {RootType::B, 3}, {RootType::C, 3}, {RootType::D, 4}}) {
    RootSystem rs(type, rank);
    for (int i = 0; i < rank; ++i) CHECK(rs.coroot(rs.rho(), rs.simple(i)) == 1);
    for (const auto& beta : rs.positive()) CHECK(rs.toSimple(rs.toE(beta)) == beta);
  }
}

TEST_CASE("centralizers of the shipped torus points") {
  RootSystem a1(RootType::A, 1), a2(RootType::A, 2), b2(RootType::B, 2);
  auto sphere = centralizer(a1, TorusPoint{8, {2, 6}});
  CHECK(sphere.simpleK.empty());
  auto pseudo = centralizer(a2, TorusPoint{8, {2, 4, 2}});
  REQUIRE(pseudo.simpleK.size() == 1);
  CHECK(pseudo.simpleK[0] == RootVec{1, 1});
  CHECK(pseudo.pseudoLevi);
  auto spin = centralizer(b2, TorusPoint{4, {0, 2}});
  REQUIRE(spin.simpleK.size() == 1);
  CHECK(spin.simpleK[0] == RootVec{1, 1});
  auto levi = centralizer(b2, TorusPoint{4, {2, 0}});
  CHECK(levi.levi.size() == 1);
  CHECK_FALSE(levi.pseudoLevi);
}

TEST_CASE("base weights need square roots of alpha(t)") {
  RootSystem a2(RootType::A, 2);
  CHECK_THROWS_AS(baseWeight(a2, TorusPoint{4, {1, 2, 1}}, {1, 1}), std::domain_error);
  auto w = baseWeight(a2, TorusPoint{8, {2, 4, 2}}, {1, -1});
  CHECK(w.unity == std::vector<int>{3, 5});
}

TEST_CASE("product character reduces to Kostant when k = h") {
  RootSystem a2(RootType::A, 2);
  auto cd = centralizer(a2, TorusPoint{8, {1, 3, 6}});
  REQUIRE(cd.simpleK.empty());
  for (const auto& [mu, d] : productCharacter(a2, cd, 5)) CHECK(d == kostant(a2, mu));
}

TEST_CASE("Kac-Kazhdan scan finds the pseudo-Levi root") {
  RootSystem a2(RootType::A, 2);
  TorusPoint t{8, {2, 4, 2}};
  auto hits = kkScan(a2, baseWeight(a2, t, {1, 1}), 4);
  bool found = false;
  for (const auto& [beta, m] : hits) found = found || (beta == RootVec{1, 1} && m == 1);
  CHECK(found);
}
