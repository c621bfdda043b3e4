#pragma once

#include <map>

#include "qcc/scalars.hpp"

namespace qcc::testing {

/// Laurent polynomial in v from {exponent: coefficient}.
inline LaurentV laurent(const std::map<int, Rat>& terms) {
  LaurentV p;
  for (const auto& [k, c] : terms) p += LaurentV::monomial(Cyclotomic(c), k);
  return p;
}

inline FieldElem ratio(const std::map<int, Rat>& num, const std::map<int, Rat>& den) {
  return FieldElem(laurent(num)) / FieldElem(laurent(den));
}

}  // namespace qcc::testing
