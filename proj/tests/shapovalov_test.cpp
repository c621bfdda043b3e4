#include "doctest.h"
#include "helpers.hpp"
#include "qcc/shapovalov.hpp"

using namespace qcc;
using qcc::testing::ratio;

namespace {

Matrix<FieldElem> braiding(const RootSystem& rs, std::shared_ptr<const FiniteModule<FieldElem>>* module = nullptr) {
  auto alg = std::make_shared<NilpotentAlgebra>(rs);
  QuasiR qr(alg, 4);
  auto v = finiteModule<FieldElem>(alg, naturalHighestWeight(rs));
  if (module) *module = v;
  auto r = rMatrix(qr, *v, *v);
  std::size_t n = v->totalDim();
  Matrix<FieldElem> flip(n * n, n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) flip(a * n + b, b * n + a) = FieldElem(1L);
  return flip * r;
}

Matrix<FieldElem> shifted(const Matrix<FieldElem>& m, const FieldElem& s) {
  return m - Matrix<FieldElem>::identity(m.rows()).scaled(s);
}

FieldElem q(int k) { return FieldElem::qpow(Rat(k)); }

}  // namespace

TEST_CASE("braiding eigenvalues on natural modules match the oracle") {
  auto a1 = braiding(RootSystem(RootType::A, 1));
  CHECK((shifted(a1, q(1)) * shifted(a1, -q(-1))).isZero());
  auto a2 = braiding(RootSystem(RootType::A, 2));
  CHECK((shifted(a2, q(1)) * shifted(a2, -q(-1))).isZero());
  auto b2 = braiding(RootSystem(RootType::B, 2));
  CHECK_FALSE((shifted(b2, q(1)) * shifted(b2, -q(-1))).isZero());
  CHECK((shifted(b2, q(1)) * shifted(b2, -q(-1)) * shifted(b2, q(-4))).isZero());
  auto c2 = braiding(RootSystem(RootType::C, 2));
  CHECK((shifted(c2, q(1)) * shifted(c2, -q(-1)) * shifted(c2, -q(-5))).isZero());
}

TEST_CASE("R-matrices intertwine and satisfy Yang-Baxter") {
  for (auto [type, rank] :
       std::vector<std::pair<RootType, int>>{{RootType::A, 1}, {RootType::A, 2}, {RootType::B, 2}, {RootType::C, 2}}) {
    RootSystem rs(type, rank);
    CAPTURE(rs.label());
    auto alg = std::make_shared<NilpotentAlgebra>(rs);
    QuasiR qr(alg, 4);
    for (const auto& mu : rs.cone(4)) CHECK(qr.nullity(mu) == 0);
    auto v = finiteModule<FieldElem>(alg, naturalHighestWeight(rs));
    auto r = rMatrix(qr, *v, *v);
    CHECK(rMatrixIntertwines(r, *v));
    CHECK(yangBaxter(r, v->totalDim()));
  }
}

TEST_CASE("a perturbed R-matrix breaks Yang-Baxter") {
  RootSystem rs(RootType::A, 2);
  auto alg = std::make_shared<NilpotentAlgebra>(rs);
  QuasiR qr(alg, 2);
  auto v = finiteModule<FieldElem>(alg, naturalHighestWeight(rs));
  auto r = rMatrix(qr, *v, *v);
  r(1, 3) = r(1, 3) + FieldElem(1L);
  CHECK_FALSE(yangBaxter(r, v->totalDim()));
  CHECK_FALSE(rMatrixIntertwines(r, *v));
}

TEST_CASE("compound Shapovalov element matches the singular vector oracle") {
  RootSystem rs(RootType::A, 2);
  auto alg = std::make_shared<NilpotentAlgebra>(rs);
  ShapovalovEngine eng(alg, 4);
  auto elt = eng.element({1, 1}, 1, MultWeight::classical(rs, {Rat(1, 2), Rat(0), Rat(3, 2)}));
  CHECK(elt.extremal);
  const auto& words = alg->basis({1, 1}).basis;
  auto at = [&](Letters w) { return std::find(words.begin(), words.end(), w) - words.begin(); };
  CHECK(elt.value.coords[at({1, 0})] / elt.value.coords[at({0, 1})] == ratio({{0, -1}, {2, -1}, {4, -1}}, {{2, 1}}));
}

TEST_CASE("rank-one Shapovalov elements need the Kac-Kazhdan relation") {
  RootSystem rs(RootType::A, 1);
  auto alg = std::make_shared<NilpotentAlgebra>(rs);
  ShapovalovEngine eng(alg, 4);
  for (int m = 1; m <= 3; ++m) {
    auto elt = eng.element({1}, m, MultWeight::classical(rs, {Rat(m - 1, 2), Rat(1 - m, 2)}));
    CHECK(elt.extremal);
    REQUIRE(elt.value.coords.size() == 1);
    CHECK_FALSE(elt.value.coords[0].isZero());
  }
  CHECK_THROWS(eng.element({1}, 2, MultWeight::classical(rs, {Rat(0), Rat(0)})));
}

TEST_CASE("Shapovalov elements of the A2 pseudo-Levi point are extremal with a classical limit") {
  RootSystem rs(RootType::A, 2);
  auto alg = std::make_shared<NilpotentAlgebra>(rs);
  ShapovalovEngine eng(alg, 4);
  TorusPoint t{8, {2, 4, 2}};
  auto zeta = baseWeight(rs, t, {1, 1});
  auto hits = kkScan(rs, zeta, 4);
  REQUIRE_FALSE(hits.empty());
  for (const auto& [beta, m] : hits) {
    auto elt = eng.element(beta, m, zeta);
    CHECK(elt.extremal);
    REQUIRE(elt.classicalRatio);
    CHECK_FALSE(elt.classicalRatio->isZero());
  }
}

TEST_CASE("path sums agree with the extremality solver") {
  RootSystem rs(RootType::B, 2);
  auto alg = std::make_shared<NilpotentAlgebra>(rs);
  ShapovalovEngine eng(alg, 4);
  TorusPoint t{4, {2, 0}};
  auto z = eng.regularized(baseWeight(rs, t, {1, 1}));
  for (const auto& beta : rs.positive()) {
    const auto& tr = eng.triple(beta);
    PathSum<EpsSeries> ps(eng.cMatrixFor(tr), z);
    ps.setAlgebra(alg);
    auto lift = extremalLift<EpsSeries>(alg, *tr.module, tr.a, z);
    const auto& fb = ps.basis();
    for (std::size_t k = 0; k < fb.size(); ++k) {
      if (!fb.succeeds(k, tr.a)) continue;
      CHECK(ps.s(k, tr.a).coords == lift.column.at(k));
    }
  }
}

TEST_CASE("singular node of D3 cancels") {
  RootSystem rs(RootType::D, 3);
  auto alg = std::make_shared<NilpotentAlgebra>(rs);
  ShapovalovEngine eng(alg, 6);
  TorusPoint t{4, {2, 2, 0}};
  auto zeta = baseWeight(rs, t, {1, 1, 1});
  auto rep = quantizabilityCheck(eng, t, zeta, *rs.toSimple({Rat(1), Rat(1), Rat(0)}), 1);
  CHECK(rep.regular);
  CHECK(rep.divisibilityChecked);
  CHECK(rep.divisible);
  CHECK(rep.classicalLimit);
}
