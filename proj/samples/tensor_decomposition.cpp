// V x M_{lambda,xi} for the natural B2 module at t = diag(-1, 1).
#include <iostream>

#include "qcc/report.hpp"

int main(int argc, char** argv) {
  using namespace qcc;
  int depth = argc > 1 ? std::stoi(argv[1]) : 4;
  RootSystem rs(RootType::B, 2);
  auto alg = std::make_shared<NilpotentAlgebra>(rs);
  ShapovalovEngine eng(alg, 4);
  TorusPoint t{4, {2, 0}};
  auto cd = centralizer(rs, t);
  auto lambda = baseWeight(rs, t, {1, 1});
  auto v = finiteModule<FieldElem>(alg, naturalHighestWeight(rs));
  RootVectors rv(alg, convexOrder(rs, false));

  bool ok = true;
  for (const auto& xi : {EVec{Rat(0), Rat(0)}, EVec{Rat(1), Rat(0)}}) {
    auto gp = generalizedParabolic(eng, cd, lambda, xi, depth + 4);
    auto dec = decomposeTensor(alg, v, gp, extremalTwist(alg, v, gp, rv), cd, depth);
    std::cout << "xi = " << toJson(xi) << ": " << dec.summands.size() << " summands\n";
    for (const auto& s : dec.summands) std::cout << "  highest weight lambda + xi + " << toJson(s.nu) << "\n";
    ok = ok && dec.direct && dec.balanced && dec.multiplicitiesMatch && dec.summandCharactersMatch;
  }
  std::cout << (ok ? "certified" : "certificate failed") << " to depth " << depth << "\n";
  return ok ? 0 : 1;
}
