// Star products of the zero-weight invariants in V x V* on the A1 sphere.
#include <iostream>

#include "qcc/report.hpp"

int main() {
  using namespace qcc;
  RootSystem rs(RootType::A, 1);
  auto alg = std::make_shared<NilpotentAlgebra>(rs);
  ShapovalovEngine eng(alg, 4);
  TorusPoint t{8, {2, 6}};
  StarProduct sp(eng, centralizer(rs, t), baseWeight(rs, t, {1}), 4);

  FiniteModulePtr v = finiteModule<FieldElem>(alg, naturalHighestWeight(rs));
  FiniteModulePtr dual = finiteModule<FieldElem>(alg, dualHighestWeight(rs, v->top().x));
  EVec zero{Rat(0), Rat(0)};
  auto basis = sp.invariants(sp.blocks().get({v, dual}), zero, zero);

  for (std::size_t i = 0; i < basis.size(); ++i) std::cout << "x" << i << " = " << toJson(basis[i].element) << "\n";
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      auto p = sp.multiply(basis[i], basis[j]);
      std::cout << "x" << i << " * x" << j << " = " << toJson(p.element) << "\n";
      if (!sp.homRealizationAgrees(basis[i], basis[j])) {
        std::cerr << "Hom realization fails\n";
        return 1;
      }
    }
}
