#include "doctest.h"
#include "qcc/linalg.hpp"

using namespace qcc;

namespace {

FieldElem q(int k) { return FieldElem::qpow(Rat(k)); }

Matrix<FieldElem> sample() {
  std::vector<FieldElem> r1{q(1), FieldElem(1L), FieldElem()}, r2{FieldElem(1L), q(-1), FieldElem(2L)}, r3(3);
  for (std::size_t k = 0; k < 3; ++k) r3[k] = q(2) * r1[k] - q(-1) * r2[k];
  return Matrix<FieldElem>::fromRows(3, {r1, r2, r3});
}

}  // namespace

TEST_CASE("rank and kernel of a dependent matrix") {
  auto m = sample();
  CHECK(rank(m) == 2);
  auto k = nullspace(m);
  REQUIRE(k.size() == 1);
  CHECK(isZeroVector(mulVec(m, k[0])));
  CHECK(determinant(m).isZero());
}

TEST_CASE("inverse and determinant of an invertible matrix") {
  auto m = Matrix<FieldElem>::fromRows(2, {{q(1), FieldElem(1L)}, {FieldElem(1L), q(-1) + FieldElem(1L)}});
  auto inv = inverse(m);
  CHECK(m * inv == Matrix<FieldElem>::identity(2));
  CHECK(determinant(m) == FieldElem(1L) + q(1) - FieldElem(1L));
  CHECK_THROWS_AS(inverse(sample()), std::domain_error);
}

TEST_CASE("solve reports consistency") {
  auto m = sample();
  auto good = solve(m, mulVec(m, std::vector<FieldElem>{FieldElem(1L), q(3), FieldElem(-1L)}));
  CHECK(good.consistent);
  CHECK(mulVec(m, good.particular) == mulVec(m, std::vector<FieldElem>{FieldElem(1L), q(3), FieldElem(-1L)}));
  CHECK(good.kernel.size() == 1);
  auto bad = solve(m, {FieldElem(1L), FieldElem(), FieldElem()});
  CHECK_FALSE(bad.consistent);
}
