// Shapovalov elements at the A2 point t = diag(i, -1, i).
#include <iostream>

#include "qcc/report.hpp"

int main() {
  using namespace qcc;
  RootSystem rs(RootType::A, 2);
  auto alg = std::make_shared<NilpotentAlgebra>(rs);
  ShapovalovEngine eng(alg, 4);
  TorusPoint t{8, {2, 4, 2}};
  auto zeta = baseWeight(rs, t, {1, 1});
  for (const auto& [beta, m] : kkScan(rs, zeta, 4)) {
    auto elt = eng.element(beta, m, zeta);
    std::cout << "beta = " << rootString(beta) << ", m = " << m << (elt.extremal ? " (extremal)" : "") << "\n";
    for (const auto& [word, c] : elt.value.terms(*alg)) std::cout << "  " << toText(c) << "  " << word.str() << "\n";
    if (elt.classicalRatio) std::cout << "  q -> 1: " << toText(*elt.classicalRatio) << " * f_beta^m\n";
  }
}
