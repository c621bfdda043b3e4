#include "doctest.h"
#include "qcc/report.hpp"
#include "qcc/starprod.hpp"

using namespace qcc;

namespace {

/// The A1 sphere: k = h, lambda from t = diag(i, -i).
struct Sphere {
  RootSystem rs{RootType::A, 1};
  std::shared_ptr<NilpotentAlgebra> alg = std::make_shared<NilpotentAlgebra>(rs);
  ShapovalovEngine eng{alg, 4};
  TorusPoint t{8, {2, 6}};
  StarProduct sp{eng, centralizer(rs, t), baseWeight(rs, t, {1}), 4};
  FiniteModulePtr v = finiteModule<FieldElem>(alg, naturalHighestWeight(rs));
  FiniteModulePtr dual = finiteModule<FieldElem>(alg, dualHighestWeight(rs, v->top().x));
  FiniteModulePtr trivial = finiteModule<FieldElem>(alg, EVec{Rat(0), Rat(0)});
  EVec zero{Rat(0), Rat(0)};

  std::vector<InvariantElement> functions() {
    std::vector<InvariantElement> out;
    for (const auto& factors : std::vector<std::vector<FiniteModulePtr>>{{trivial}, {v, dual}, {dual, v}})
      for (auto& x : sp.invariants(sp.blocks().get(factors), zero, zero)) out.push_back(std::move(x));
    return out;
  }
};

bool same(const InvariantElement& a, const InvariantElement& b) { return canonical(a.element) == canonical(b.element); }

}  // namespace

TEST_CASE("S-lift reduces to 1 x 1 at q = 1 and produces extremal vectors") {
  Sphere s;
  CHECK(classicalLimitS(s.sp.lift()).passes);
  GeneralizedParabolic base = generalizedParabolic(s.eng, centralizer(s.rs, s.t), baseWeight(s.rs, s.t, {1}),
                                                   s.zero, 4);
  TensorModule<FieldElem> tensor(s.v, base.module);
  for (const auto& mu : s.v->depths())
    for (std::size_t k = 0; k < s.v->dim(mu); ++k) {
      std::vector<FieldElem> x(s.v->dim(mu));
      x[k] = FieldElem(1L);
      auto image = applySLift(*s.alg, s.sp.lift(), tensor, mu, x);
      CHECK(isExtremalVector(tensor, mu, image));
    }
}

TEST_CASE("invariant dimensions equal the Hom_k counts") {
  Sphere s;
  for (const auto& factors : std::vector<std::vector<FiniteModulePtr>>{{s.v, s.dual}, {s.v, s.v}, {s.dual, s.v, s.v, s.dual}}) {
    auto block = s.sp.blocks().get(factors);
    long expected = 0;
    auto counts = classicalHomCounts(s.rs, centralizer(s.rs, s.t), blockWeights(*block), s.zero);
    if (counts.count(s.zero)) expected = counts.at(s.zero);
    CHECK(static_cast<long>(s.sp.invariants(block, s.zero, s.zero).size()) == expected);
  }
}

TEST_CASE("invariants are complete when the lift is shallower than the block") {
  RootSystem rs(RootType::B, 3);
  auto alg = std::make_shared<NilpotentAlgebra>(rs);
  ShapovalovEngine eng(alg, 4);
  TorusPoint t{4, {2, 2, 0}};
  auto cd = centralizer(rs, t);
  StarProduct sp(eng, cd, baseWeight(rs, t, {1, 1, 1}), 3);
  FiniteModulePtr v = finiteModule<FieldElem>(alg, naturalHighestWeight(rs));
  FiniteModulePtr dual = finiteModule<FieldElem>(alg, dualHighestWeight(rs, v->top().x));
  auto block = sp.blocks().get({v, dual});
  REQUIRE(block->span() > 3);
  EVec zero(3, Rat(0));
  CHECK(static_cast<long>(sp.invariants(block, zero, zero).size()) ==
        classicalHomCounts(rs, cd, blockWeights(*block), zero).at(zero));
}

TEST_CASE("star product is associative and unital with the classical table") {
  Sphere s;
  auto basis = s.functions();
  REQUIRE(basis.size() == 5);
  const auto& unit = basis[0];
  bool noncommutative = false;
  for (const auto& a : basis) {
    CHECK(same(s.sp.multiply(unit, a), a));
    CHECK(same(s.sp.multiply(a, unit), a));
    for (const auto& b : basis) {
      auto ab = s.sp.multiply(a, b);
      CHECK(s.sp.isInvariant(ab));
      auto lim = limitAtOne(canonical(ab.element));
      auto plain = limitAtOne(canonical(s.sp.plainProduct(a, b).element));
      REQUIRE(lim);
      REQUIRE(plain);
      CHECK(*lim == *plain);
      noncommutative = noncommutative || !same(ab, s.sp.multiply(b, a));
      for (const auto& c : basis) CHECK(same(s.sp.multiply(ab, c), s.sp.multiply(a, s.sp.multiply(b, c))));
    }
  }
  CHECK(noncommutative);
}

TEST_CASE("sections are modules over the function algebra") {
  Sphere s;
  auto basis = s.functions();
  EVec alpha = s.rs.toE(s.rs.simple(0));
  std::vector<InvariantElement> right, left;
  for (const auto& factors : std::vector<std::vector<FiniteModulePtr>>{{s.v, s.dual}, {s.dual, s.v}}) {
    for (auto& x : s.sp.invariants(s.sp.blocks().get(factors), alpha, s.zero)) right.push_back(std::move(x));
    for (auto& x : s.sp.invariants(s.sp.blocks().get(factors), s.zero, alpha)) left.push_back(std::move(x));
  }
  REQUIRE_FALSE(right.empty());
  REQUIRE_FALSE(left.empty());
  for (const auto& f1 : basis)
    for (const auto& f2 : basis) {
      auto f12 = s.sp.multiply(f1, f2);
      for (const auto& h : right) CHECK(same(s.sp.multiply(s.sp.multiply(h, f1), f2), s.sp.multiply(h, f12)));
      for (const auto& g : left) CHECK(same(s.sp.multiply(f1, s.sp.multiply(f2, g)), s.sp.multiply(f12, g)));
    }
}

TEST_CASE("products realize composition of homomorphisms") {
  Sphere s;
  auto basis = s.sp.invariants(s.sp.blocks().get({s.v, s.dual}), s.zero, s.zero);
  bool orderMatters = false;
  for (const auto& h : basis)
    for (const auto& f : basis) {
      CHECK(s.sp.homRealizationAgrees(h, f));
      auto direct = s.sp.extremalSection(s.sp.multiply(h, f).element);
      auto swapped = s.sp.composeHom(s.sp.extremalSection(h.element), f.element);
      orderMatters = orderMatters || !(direct.coeffs == swapped.coeffs);
    }
  CHECK(orderMatters);
}

TEST_CASE("typing and depth errors") {
  Sphere s;
  auto basis = s.sp.invariants(s.sp.blocks().get({s.v, s.dual}), s.zero, s.zero);
  EVec alpha = s.rs.toE(s.rs.simple(0));
  auto section = s.sp.invariants(s.sp.blocks().get({s.v, s.dual}), s.zero, alpha);
  REQUIRE_FALSE(section.empty());
  CHECK_THROWS_AS(s.sp.multiply(section[0], basis[0]), std::invalid_argument);
  StarProduct shallow(s.eng, centralizer(s.rs, s.t), baseWeight(s.rs, s.t, {1}), 1);
  auto b = shallow.invariants(shallow.blocks().get({s.v, s.dual}), s.zero, s.zero);
  CHECK_THROWS_AS(shallow.multiply(b[0], b[1]), std::out_of_range);
}
