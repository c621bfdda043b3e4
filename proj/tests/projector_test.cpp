#include "doctest.h"
#include "qcc/projector.hpp"

using namespace qcc;

namespace {

struct PseudoLevi {
  RootSystem rs{RootType::A, 2};
  std::shared_ptr<NilpotentAlgebra> alg = std::make_shared<NilpotentAlgebra>(rs);
  ShapovalovEngine eng{alg, 4};
  TorusPoint t{8, {2, 4, 2}};
  CentralizerData cd = centralizer(rs, t);
  MultWeight lambda = baseWeight(rs, t, {1, 1});
};

}  // namespace

TEST_CASE("extremal projector is idempotent, extremal and independent of the convex order") {
  for (auto type : {RootType::A, RootType::B}) {
    RootSystem rs(type, 2);
    CAPTURE(rs.label());
    auto alg = std::make_shared<NilpotentAlgebra>(rs);
    auto v = finiteModule<FieldElem>(alg, naturalHighestWeight(rs));
    EVec x = Rat(-1) * rs.rho();
    x[0] += Rat(7, 2);
    MultWeight zeta = MultWeight::classical(rs, x);
    zeta.order = 5;
    zeta.unity = {1, 3};
    TensorModule<FieldElem> tensor(v, std::make_shared<VermaModule<FieldElem>>(alg, zeta));
    MultWeight zero = MultWeight::classical(rs, EVec(rs.dimE(), Rat(0)));
    ShiftedProjector<FieldElem> p1(alg, RootVectors(alg, convexOrder(rs, false)), zero);
    ShiftedProjector<FieldElem> p2(alg, RootVectors(alg, convexOrder(rs, true)), zero);
    for (const auto& mu : rs.cone(3)) {
      if (tensor.dim(mu) == 0) continue;
      auto m = p1.matrix(tensor, mu);
      CHECK(m == p2.matrix(tensor, mu));
      CHECK(m * m == m);
      for (std::size_t k = 0; k < m.cols(); ++k) CHECK(isExtremalVector(tensor, mu, m.column(k)));
      for (int i = 0; i < rs.rank(); ++i) {
        RootVec above = mu - rs.simple(i);
        if (!isNonnegative(above) || tensor.dim(above) == 0) continue;
        CHECK((m * tensor.lower(i, above)).isZero());
      }
    }
  }
}

TEST_CASE("rank-one root factor scales by q^{-l eta - l(l+1)} times the q-number ratio") {
  RootSystem rs(RootType::A, 1);
  auto alg = std::make_shared<NilpotentAlgebra>(rs);
  RootVectors rv(alg, convexOrder(rs, false));
  VermaModule<FieldElem> verma(alg, MultWeight::classical(rs, {Rat(3, 4), Rat(-3, 4)}));
  ProjectorFactor<FieldElem> pf;
  pf.root = rs.simple(0);
  pf.halfNorm = 1;
  pf.shift = FieldElem::qpow(Rat(-3));
  pf.e = rv.all()[0].e;
  pf.f = rv.all()[0].f;
  for (int l = 0; l <= 4; ++l) {
    auto w = applyRootFactor(*alg, verma, pf, RootVec{l}, {FieldElem(1L)});
    Rat eta = Rat(3, 2) - 2 * l;
    FieldElem expected = FieldElem::qpow(-l * eta - l * (l + 1));
    for (int k = 1; k <= l; ++k) expected = expected * qnum(Rat(-3 - k)) / qnum(Rat(-3) + eta + k);
    CHECK(w.at(0) == expected);
  }
}

TEST_CASE("pseudo-Levi base module is irreducible with the product character") {
  PseudoLevi p;
  auto gp = generalizedParabolic(p.eng, p.cd, p.lambda, EVec(3, Rat(0)), 5);
  REQUIRE(gp.generators.size() == 1);
  CHECK(irreducibilityCheck(gp.module, 5).irreducible);
  for (const auto& [mu, d] : productCharacter(p.rs, p.cd, 5)) CHECK(d == static_cast<long>(gp.module->dim(mu)));
}

TEST_CASE("a Verma module at a Kac-Kazhdan point is reducible") {
  RootSystem rs(RootType::A, 2);
  auto alg = std::make_shared<NilpotentAlgebra>(rs);
  auto verma = std::make_shared<VermaModule<FieldElem>>(alg, MultWeight::classical(rs, {Rat(1, 2), Rat(0), Rat(3, 2)}));
  auto rep = irreducibilityCheck(verma, 2);
  CHECK_FALSE(rep.irreducible);
  for (const auto& e : rep.entries)
    if (e.mu == RootVec{1, 1}) CHECK(e.gramDeterminant.isZero());
}

TEST_CASE("tensor products with the base module decompose") {
  PseudoLevi p;
  auto v = finiteModule<FieldElem>(p.alg, naturalHighestWeight(p.rs));
  RootVectors rv(p.alg, convexOrder(p.rs, false));
  for (const auto& xi : {EVec{Rat(0), Rat(0), Rat(0)}, EVec{Rat(1), Rat(0), Rat(0)}}) {
    auto gp = generalizedParabolic(p.eng, p.cd, p.lambda, xi, 6);
    auto td = extremalTwist(p.alg, v, gp, rv);
    CHECK(td.invertible);
    for (const auto& w : td.weights) CHECK(w.inverseVerified);
    auto dec = decomposeTensor(p.alg, v, gp, td, p.cd, 4);
    CHECK(dec.direct);
    CHECK(dec.balanced);
    CHECK(dec.multiplicitiesMatch);
    CHECK(dec.summandCharactersMatch);
    long total = 0;
    for (const auto& [nu, m] : dec.multiplicities) total += m;
    long classical = 0;
    for (const auto& [eta, m] : dec.classical) classical += m;
    CHECK(classical == total);
  }
}

TEST_CASE("twist refuses a parabolic module shallower than V") {
  PseudoLevi p;
  auto v = finiteModule<FieldElem>(p.alg, naturalHighestWeight(p.rs));
  auto gp = generalizedParabolic(p.eng, p.cd, p.lambda, EVec(3, Rat(0)), 1);
  CHECK_THROWS_AS(extremalTwist(p.alg, v, gp, RootVectors(p.alg, convexOrder(p.rs, false))), std::invalid_argument);
}

TEST_CASE("Brauer-Klimyk counts") {
  RootSystem a1(RootType::A, 1);
  auto alg = std::make_shared<NilpotentAlgebra>(a1);
  auto v = finiteModule<FieldElem>(alg, naturalHighestWeight(a1));
  auto sphere = centralizer(a1, TorusPoint{8, {2, 6}});
  auto counts = classicalHomCounts(a1, sphere, *v, EVec{Rat(0), Rat(0)});
  CHECK(counts.size() == 2);
  auto full = centralizer(a1, TorusPoint{8, {0, 0}});
  auto adjoint = std::map<EVec, long>{{{Rat(1), Rat(-1)}, 1}, {{Rat(0), Rat(0)}, 2}, {{Rat(-1), Rat(1)}, 1}};
  auto g = classicalHomCounts(a1, full, adjoint, EVec{Rat(0), Rat(0)});
  CHECK(g.size() == 2);
  CHECK(g.at(EVec{Rat(0), Rat(0)}) == 1);
  CHECK(g.at(EVec{Rat(1), Rat(-1)}) == 1);
  CHECK(kCharacter(a1, full, EVec{Rat(1), Rat(-1)}, 4).at(RootVec{1}) == 1);
  CHECK(kCharacter(a1, full, EVec{Rat(1), Rat(-1)}, 4).at(RootVec{3}) == 0);
}
