#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "qcc/scalars.hpp"

using namespace qcc;
using qcc::testing::laurent;

namespace {

FieldElem randomElem(std::mt19937& rng, int order) {
  std::uniform_int_distribution<int> coef(-3, 3), expo(-4, 4), unity(0, order - 1);
  LaurentV num, den = LaurentV::monomial(Cyclotomic(1L), expo(rng));
  for (int k = 0; k < 3; ++k) num += LaurentV::monomial(Cyclotomic::rootOfUnity(order, unity(rng)) * Cyclotomic(coef(rng)), expo(rng));
  den += LaurentV::monomial(Cyclotomic(coef(rng)), expo(rng));
  if (den.isZero()) den = LaurentV(1L);
  return FieldElem(num, den);
}

}  // namespace

TEST_CASE("q-numbers match the sympy oracle") {
  CHECK(qnum(Rat(3)) == FieldElem(laurent({{-4, 1}, {0, 1}, {4, 1}})));
  CHECK(qnumBase(Rat(2), Rat(2)) == FieldElem(laurent({{-4, 1}, {4, 1}})));
  CHECK(qbinomial(4, 2) == FieldElem(laurent({{-8, 1}, {-4, 1}, {0, 2}, {4, 1}, {8, 1}})));
  CHECK(qnum(Rat(0)).isZero());
  CHECK(qnum(Rat(-2)) == -qnum(Rat(2)));
  CHECK_THROWS_AS(qnum(Rat(1, 3)), std::domain_error);
}

TEST_CASE("cyclotomic inverses match the sympy oracle") {
  auto z8 = Cyclotomic::rootOfUnity(8, 1);
  CHECK((Cyclotomic(1L) + z8).inverse() == Cyclotomic(8, {Rat(1, 2), Rat(-1, 2), Rat(1, 2), Rat(-1, 2)}));
  auto z3 = Cyclotomic::rootOfUnity(3, 1);
  CHECK((Cyclotomic(2L) + z3).inverse() == Cyclotomic(3, {Rat(1, 3), Rat(-1, 3)}));
  auto z5 = Cyclotomic::rootOfUnity(5, 1);
  Cyclotomic x = Cyclotomic(1L) - z5 + Cyclotomic(3L) * z5 * z5 * z5;
  CHECK(x.inverse() == Cyclotomic(5, {Rat(22, 131), Rat(15, 131), Rat(47, 131), Rat(13, 131)}));
}

TEST_CASE("roots of unity reduce modulo the cyclotomic polynomial") {
  CHECK(Cyclotomic::rootOfUnity(8, 4) == Cyclotomic(-1L));
  CHECK(Cyclotomic::rootOfUnity(8, 2) * Cyclotomic::rootOfUnity(8, 2) == Cyclotomic(-1L));
  CHECK(Cyclotomic::rootOfUnity(8, 11) == Cyclotomic::rootOfUnity(8, 3));
  auto z6 = Cyclotomic::rootOfUnity(6, 1);
  CHECK(z6 * z6 - z6 + Cyclotomic(1L) == Cyclotomic());
  CHECK(Cyclotomic::rootOfUnity(8, 1) * Cyclotomic(Rat(2, 3)) == Cyclotomic(8, {Rat(0), Rat(2, 3)}));
  CHECK_THROWS_AS(Cyclotomic::rootOfUnity(4, 1) * Cyclotomic::rootOfUnity(6, 1), std::domain_error);
}

TEST_CASE("unreduced rational coefficients are canonicalized") {
  CHECK(Cyclotomic(8, {Rat(0), Rat(3, 3)}) == Cyclotomic::rootOfUnity(8, 1));
  CHECK(Cyclotomic(Rat(6, -4)) == Cyclotomic(Rat(-3, 2)));
  CHECK(FieldElem(laurent({{1, Rat(2, 2)}})) == FieldElem::vpow(1));
}

TEST_CASE("field axioms hold on random elements") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    FieldElem a = randomElem(rng, 8), b = randomElem(rng, 8), c = randomElem(rng, 8);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).isZero());
    if (!b.isZero()) {
      CHECK(a / b * b == a);
      CHECK((b * b.inverse()).isOne());
    }
  }
}

TEST_CASE("normal form is canonical") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    FieldElem a = randomElem(rng, 8), c = randomElem(rng, 8);
    if (c.isZero()) continue;
    FieldElem scaled(a.num() * c.num() * c.den(), a.den() * c.num() * c.den());
    CHECK(scaled == a);
    CHECK(scaled.str() == a.str());
  }
}

TEST_CASE("classical limits") {
  for (int n = -4; n <= 4; ++n) CHECK(std::get<Cyclotomic>(limitAtOne(qnum(Rat(n)))) == Cyclotomic(static_cast<long>(n)));
  CHECK(std::get<Cyclotomic>(limitAtOne(qbinomial(5, 2))) == Cyclotomic(10L));
  FieldElem pole = FieldElem(1L) / (FieldElem::qpow(Rat(1)) - FieldElem(1L));
  CHECK(std::holds_alternative<PoleSignal>(limitAtOne(pole)));
  FieldElem removable = (FieldElem::qpow(Rat(2)) - FieldElem(1L)) / (FieldElem::qpow(Rat(1)) - FieldElem(1L));
  CHECK(std::get<Cyclotomic>(limitAtOne(removable)) == Cyclotomic(2L));
}

TEST_CASE("q-powers and v-powers agree") {
  CHECK(FieldElem::qpow(Rat(3, 2)) == FieldElem::vpow(3));
  CHECK(FieldElem::qpow(Rat(-1)) * FieldElem::qpow(Rat(1)) == FieldElem(1L));
  CHECK_THROWS_AS(FieldElem::qpow(Rat(1, 4)), std::domain_error);
  CHECK(FieldElem::vpow(2).pow(-3) == FieldElem::vpow(-6));
}

TEST_CASE("eps-series invert and truncate") {
  EpsSeries x = EpsSeries::binomialPower(1, 5);
  EpsSeries y = x.inverse();
  CHECK(y.order() == 5);
  for (int k = 0; k < 5; ++k) CHECK(y.coeff(k) == FieldElem(k % 2 ? -1L : 1L));
  EpsSeries prod = x * y;
  CHECK(prod.coeff(0) == FieldElem(1L));
  for (int k = 1; k < 5; ++k) CHECK(prod.coeff(k).isZero());
  CHECK_THROWS_AS(prod.coeff(5), InconclusiveError);
  CHECK(EpsSeries::binomialPower(3, 6).coeff(2) == FieldElem(3L));
  CHECK_THROWS_AS((EpsSeries(1L) + EpsSeries::epsPower(1)).inverse(), InconclusiveError);
  CHECK(std::get<FieldElem>(epsLimit(x)) == FieldElem(1L));
  CHECK(std::holds_alternative<PoleSignal>(epsLimit(EpsSeries::epsPower(1).inverse())));
}
