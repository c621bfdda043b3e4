#include "doctest.h"
#include "helpers.hpp"
#include "qcc/uqcore.hpp"

using namespace qcc;
using qcc::testing::ratio;

namespace {

std::vector<FieldElem> unit(std::size_t n, std::size_t k) {
  std::vector<FieldElem> e(n);
  e[k] = FieldElem(1L);
  return e;
}

/// [e_i, f_j] = delta_ij [h_i] on every basis vector of V[mu].
bool commutatorHolds(const WeightModule<FieldElem>& m, const RootVec& mu) {
  const auto& rs = m.roots();
  for (int i = 0; i < rs.rank(); ++i)
    for (int j = 0; j < rs.rank(); ++j) {
      RootVec target = mu + rs.simple(j) - rs.simple(i);
      if (!isNonnegative(target) || m.dim(target) == 0) continue;
      RootVec up = mu - rs.simple(i);
      bool raisable = isNonnegative(up) && m.dim(up) > 0;
      for (std::size_t k = 0; k < m.dim(mu); ++k) {
        auto v = unit(m.dim(mu), k);
        auto ef = applyWord(m, Word{true, {i}}, mu + rs.simple(j), applyWord(m, Word{false, {j}}, mu, v));
        std::vector<FieldElem> fe(m.dim(target));
        if (raisable) fe = applyWord(m, Word{false, {j}}, up, applyWord(m, Word{true, {i}}, mu, v));
        for (std::size_t r = 0; r < fe.size(); ++r) {
          FieldElem want = i == j ? m.bracket(i, mu) * v[r] : FieldElem();
          if (!(ef[r] - fe[r] == want)) return false;
        }
      }
    }
  return true;
}

}  // namespace

TEST_CASE("PBW dimensions equal the Kostant partition function") {
  for (auto [type, rank] : std::vector<std::pair<RootType, int>>{
           {RootType::A, 2}, {RootType::B, 2}, {RootType::C, 2}, {RootType::A, 3}, {RootType::D, 3}}) {
    NilpotentAlgebra alg(RootSystem(type, rank));
    for (const auto& mu : alg.roots().cone(5)) {
      CAPTURE(rootString(mu));
      CHECK(kostant(alg.roots(), mu) == static_cast<long>(alg.basis(mu).dim()));
    }
  }
}

TEST_CASE("a perturbed Serre relation is caught by the dimension check") {
  NilpotentAlgebra bad(RootSystem(RootType::A, 2), false, 0);
  CHECK_NOTHROW(bad.basis({1, 1}));
  CHECK_THROWS_WITH_AS(bad.basis({2, 2}), doctest::Contains("Kostant count"), std::logic_error);
}

TEST_CASE("rank-one Verma action matches the sympy oracle") {
  RootSystem rs(RootType::A, 1);
  auto alg = std::make_shared<NilpotentAlgebra>(rs);
  auto verma = std::make_shared<VermaModule<FieldElem>>(alg, MultWeight::classical(rs, {Rat(3, 4), Rat(-3, 4)}));
  std::vector<FieldElem> expected{ratio({{0, 1}, {2, 1}, {4, 1}}, {{1, 1}, {3, 1}}),
                                  ratio({{0, 1}, {4, 1}}, {{1, 1}, {3, 1}}),
                                  ratio({{0, -1}, {4, -1}, {8, -1}}, {{3, 1}, {5, 1}})};
  GramCache<FieldElem> gram(verma);
  FieldElem norm(1L);
  for (int l = 1; l <= 3; ++l) {
    auto image = applyWord(*verma, Word{true, {0}}, RootVec{l}, {FieldElem(1L)});
    REQUIRE(image.size() == 1);
    CHECK(image[0] == expected[l - 1]);
    norm = norm * expected[l - 1];
    CHECK(gram(RootVec{l})(0, 0) == norm);
  }
}

TEST_CASE("A2 singular vector at a Kac-Kazhdan point matches the sympy oracle") {
  RootSystem rs(RootType::A, 2);
  auto alg = std::make_shared<NilpotentAlgebra>(rs);
  VermaModule<FieldElem> verma(alg, MultWeight::classical(rs, {Rat(1, 2), Rat(0), Rat(3, 2)}));
  RootVec mu{1, 1};
  auto ops = Matrix<FieldElem>::fromRows(2, {});
  for (int i = 0; i < 2; ++i) {
    const auto& e = verma.raise(i, mu);
    for (std::size_t r = 0; r < e.rows(); ++r) ops.appendRow(e.row(r));
  }
  auto kernel = nullspace(ops);
  REQUIRE(kernel.size() == 1);
  const auto& words = alg->basis(mu).basis;
  auto at = [&](Letters w) { return std::find(words.begin(), words.end(), w) - words.begin(); };
  FieldElem a = kernel[0][at({0, 1})], b = kernel[0][at({1, 0})];
  CHECK(b / a == ratio({{0, -1}, {2, -1}, {4, -1}}, {{2, 1}}));
}

TEST_CASE("finite modules have Weyl dimensions") {
  for (auto [type, rank] : std::vector<std::pair<RootType, int>>{
           {RootType::A, 2}, {RootType::B, 2}, {RootType::C, 2}, {RootType::D, 3}}) {
    RootSystem rs(type, rank);
    auto alg = std::make_shared<NilpotentAlgebra>(rs);
    auto v = finiteModule<FieldElem>(alg, naturalHighestWeight(rs));
    CHECK(v->totalDim() == static_cast<std::size_t>(type == RootType::A ? rank + 1 : 2 * rank + (type == RootType::B)));
  }
  RootSystem b2(RootType::B, 2);
  auto alg = std::make_shared<NilpotentAlgebra>(b2);
  CHECK(finiteModule<FieldElem>(alg, spinHighestWeight(b2))->totalDim() == 4);
  CHECK_THROWS_AS(finiteModule<FieldElem>(alg, EVec{Rat(-1), Rat(0)}), std::domain_error);
}

TEST_CASE("tensor products satisfy the defining relations") {
  for (auto [type, rank] :
       std::vector<std::pair<RootType, int>>{{RootType::A, 2}, {RootType::B, 2}, {RootType::C, 2}}) {
    RootSystem rs(type, rank);
    CAPTURE(rs.label());
    auto alg = std::make_shared<NilpotentAlgebra>(rs);
    auto v = finiteModule<FieldElem>(alg, naturalHighestWeight(rs));
    EVec x = Rat(-1) * rs.rho();
    x[0] += Rat(1, 2);
    auto verma = std::make_shared<VermaModule<FieldElem>>(alg, MultWeight::classical(rs, x));
    TensorModule<FieldElem> tensor(v, verma);
    for (const auto& mu : rs.cone(3)) {
      CAPTURE(rootString(mu));
      CHECK(commutatorHolds(tensor, mu));
    }
    for (const auto& mu : v->depths()) CHECK(commutatorHolds(*v, mu));
  }
}

TEST_CASE("quantum Serre relation annihilates tensor vectors") {
  RootSystem rs(RootType::A, 2);
  auto alg = std::make_shared<NilpotentAlgebra>(rs);
  auto v = finiteModule<FieldElem>(alg, naturalHighestWeight(rs));
  auto verma = std::make_shared<VermaModule<FieldElem>>(alg, MultWeight::classical(rs, {Rat(1, 2), Rat(0), Rat(-1, 2)}));
  TensorModule<FieldElem> tensor(v, verma);
  FieldElem two = qnum(Rat(2));
  for (const auto& mu : rs.cone(2))
    for (std::size_t k = 0; k < tensor.dim(mu); ++k) {
      auto x = unit(tensor.dim(mu), k);
      auto a = applyWord(tensor, Word{false, {0, 0, 1}}, mu, x);
      auto b = applyWord(tensor, Word{false, {0, 1, 0}}, mu, x);
      auto c = applyWord(tensor, Word{false, {1, 0, 0}}, mu, x);
      for (std::size_t r = 0; r < a.size(); ++r) CHECK((a[r] - two * b[r] + c[r]).isZero());
    }
}
