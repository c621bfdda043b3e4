#pragma once

// Root systems of types A-D in epsilon coordinates, finite-order torus
// points, centralizer subsystems, base weights and partition counts.

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcc/scalars.hpp"

namespace qcc {

/// Coordinates over the simple roots.
using RootVec = std::vector<int>;
/// Coordinates over the orthonormal system eps_1, ..., eps_n.
using EVec = std::vector<Rat>;

inline std::string rootString(const RootVec& mu) {
  std::string s = "(";
  for (std::size_t i = 0; i < mu.size(); ++i) s += (i ? "," : "") + std::to_string(mu[i]);
  return s + ")";
}

enum class RootType { A, B, C, D };

inline char typeLetter(RootType t) { return "ABCD"[static_cast<int>(t)]; }

inline RootType parseRootType(const std::string& s) {
  if (s == "A") return RootType::A;
  if (s == "B") return RootType::B;
  if (s == "C") return RootType::C;
  if (s == "D") return RootType::D;
  throw std::invalid_argument("unsupported root type '" + s + "'");
}

inline Rat dot(const EVec& a, const EVec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
inline EVec operator+(EVec a, const EVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
inline EVec operator-(EVec a, const EVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}
inline EVec operator*(const Rat& s, EVec a) {
  for (auto& x : a) x *= s;
  return a;
}
inline RootVec operator+(RootVec a, const RootVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
inline RootVec operator-(RootVec a, const RootVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}
inline RootVec operator*(int s, RootVec a) {
  for (auto& x : a) x *= s;
  return a;
}
inline int height(const RootVec& mu) {
  int h = 0;
  for (int c : mu) h += c;
  return h;
}
inline bool isNonnegative(const RootVec& mu) {
  return std::all_of(mu.begin(), mu.end(), [](int c) { return c >= 0; });
}
inline bool isZeroVec(const RootVec& mu) {
  return std::all_of(mu.begin(), mu.end(), [](int c) { return c == 0; });
}

inline long toInt(const Rat& r) {
  if (r.get_den() != 1) throw std::domain_error("expected an integer, got " + r.get_str());
  return r.get_num().get_si();
}

class RootSystem {
 public:
  RootSystem(RootType type, int rank) : type_(type), rank_(rank) {
    int minRank = type == RootType::A ? 1 : (type == RootType::D ? 3 : 2);
    if (rank < minRank)
      throw std::invalid_argument(std::string("unsupported rank ") + std::to_string(rank) + " for type " +
                                  typeLetter(type));
    dimE_ = type == RootType::A ? rank + 1 : rank;
    auto unit = [&](int i) {
      EVec e(dimE_, Rat(0));
      e[i] = 1;
      return e;
    };
    for (int i = 0; i + 1 < dimE_ && i < rank_ - (type == RootType::A ? 0 : 1); ++i)
      simpleE_.push_back(unit(i) - unit(i + 1));
    switch (type) {
      case RootType::A:
        break;
      case RootType::B:
        simpleE_.push_back(unit(rank - 1));
        break;
      case RootType::C:
        simpleE_.push_back(Rat(2) * unit(rank - 1));
        break;
      case RootType::D:
        simpleE_.push_back(unit(rank - 2) + unit(rank - 1));
        break;
    }
    std::vector<EVec> pos;
    for (int i = 0; i < dimE_; ++i)
      for (int j = i + 1; j < dimE_; ++j) {
        pos.push_back(unit(i) - unit(j));
        if (type != RootType::A) pos.push_back(unit(i) + unit(j));
      }
    if (type == RootType::B)
      for (int i = 0; i < dimE_; ++i) pos.push_back(unit(i));
    if (type == RootType::C)
      for (int i = 0; i < dimE_; ++i) pos.push_back(Rat(2) * unit(i));
    for (const auto& e : pos) {
      auto c = toSimple(e);
      if (!c || !isNonnegative(*c)) throw std::logic_error("positive root outside the positive cone");
      positive_.push_back(*c);
    }
    std::sort(positive_.begin(), positive_.end(), [](const RootVec& a, const RootVec& b) {
      if (height(a) != height(b)) return height(a) < height(b);
      return a > b;
    });
    rho_ = EVec(dimE_, Rat(0));
    for (const auto& r : positive_) rho_ = rho_ + toE(r);
    rho_ = Rat(1, 2) * rho_;
  }

  RootType type() const { return type_; }
  int rank() const { return rank_; }
  int dimE() const { return dimE_; }
  std::string label() const { return std::string(1, typeLetter(type_)) + std::to_string(rank_); }
  const std::vector<EVec>& simpleE() const { return simpleE_; }
  const std::vector<RootVec>& positive() const { return positive_; }
  const EVec& rho() const { return rho_; }

  RootVec simple(int i) const {
    RootVec r(rank_, 0);
    r[i] = 1;
    return r;
  }
  RootVec zero() const { return RootVec(rank_, 0); }

  EVec toE(const RootVec& mu) const {
    EVec e(dimE_, Rat(0));
    for (int i = 0; i < rank_; ++i)
      if (mu[i] != 0) e = e + Rat(mu[i]) * simpleE_[i];
    return e;
  }

  /// Simple-root coordinates of an element of the root lattice, if it lies there.
  std::optional<RootVec> toSimple(const EVec& e) const {
    // Solve sum c_i simpleE_i = e by elimination on the dimE x rank system.
    std::vector<std::vector<Rat>> m(dimE_, std::vector<Rat>(rank_ + 1));
    for (int r = 0; r < dimE_; ++r) {
      for (int c = 0; c < rank_; ++c) m[r][c] = simpleE_[c][r];
      m[r][rank_] = e[r];
    }
    int row = 0;
    std::vector<int> piv;
    for (int c = 0; c < rank_; ++c) {
      int p = -1;
      for (int r = row; r < dimE_; ++r)
        if (m[r][c] != 0) {
          p = r;
          break;
        }
      if (p < 0) continue;
      std::swap(m[p], m[row]);
      Rat inv = 1 / m[row][c];
      for (auto& x : m[row]) x *= inv;
      for (int r = 0; r < dimE_; ++r) {
        if (r == row || m[r][c] == 0) continue;
        Rat f = m[r][c];
        for (int k = 0; k <= rank_; ++k) m[r][k] -= f * m[row][k];
      }
      piv.push_back(c);
      ++row;
    }
    for (int r = row; r < dimE_; ++r)
      if (m[r][rank_] != 0) return std::nullopt;
    RootVec out(rank_, 0);
    for (int r = 0; r < row; ++r) {
      if (m[r][rank_].get_den() != 1) return std::nullopt;
      out[piv[r]] = static_cast<int>(m[r][rank_].get_num().get_si());
    }
    return out;
  }

  Rat inner(const RootVec& a, const RootVec& b) const { return dot(toE(a), toE(b)); }
  /// (alpha_i, alpha_i) / 2, so that q_i = q^{d_i}.
  Rat halfNorm(int i) const { return dot(simpleE_[i], simpleE_[i]) / 2; }
  Rat halfNorm(const RootVec& r) const { return inner(r, r) / 2; }
  /// a_ij = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i).
  int cartan(int i, int j) const {
    return static_cast<int>(toInt(2 * dot(simpleE_[i], simpleE_[j]) / dot(simpleE_[i], simpleE_[i])));
  }
  /// (x, gamma^vee) = 2 (x, gamma) / (gamma, gamma).
  Rat coroot(const EVec& x, const RootVec& gamma) const {
    EVec g = toE(gamma);
    return 2 * dot(x, g) / dot(g, g);
  }

  bool isPositiveRoot(const RootVec& r) const {
    return std::find(positive_.begin(), positive_.end(), r) != positive_.end();
  }
  bool isRoot(const RootVec& r) const { return isPositiveRoot(r) || isPositiveRoot(-1 * r); }
  int positiveIndex(const RootVec& r) const {
    auto it = std::find(positive_.begin(), positive_.end(), r);
    return it == positive_.end() ? -1 : static_cast<int>(it - positive_.begin());
  }
  int simpleIndex(const RootVec& r) const {
    if (height(r) != 1 || !isNonnegative(r)) return -1;
    return static_cast<int>(std::find(r.begin(), r.end(), 1) - r.begin());
  }

  /// Dominant integral test: (nu, alpha_i^vee) in Z_{>=0} for all i.
  bool isDominantIntegral(const EVec& nu) const {
    for (int i = 0; i < rank_; ++i) {
      Rat c = coroot(nu, simple(i));
      if (c.get_den() != 1 || c < 0) return false;
    }
    return true;
  }

  /// Weyl dimension formula.
  mpz_class weylDimension(const EVec& nu) const {
    Rat p = 1;
    for (const auto& a : positive_) {
      EVec e = toE(a);
      p *= dot(nu + rho_, e) / dot(rho_, e);
    }
    if (p.get_den() != 1) throw std::logic_error("non-integral Weyl dimension");
    return p.get_num();
  }

  /// Fundamental weight omega_i in epsilon coordinates.
  EVec fundamentalWeight(int i) const {
    // Solve (omega, alpha_j^vee) = delta_ij inside the span of the simple roots.
    std::vector<std::vector<Rat>> m(rank_, std::vector<Rat>(rank_ + 1));
    for (int j = 0; j < rank_; ++j) {
      for (int k = 0; k < rank_; ++k) m[j][k] = coroot(simpleE_[k], simple(j));
      m[j][rank_] = (i == j) ? 1 : 0;
    }
    for (int c = 0; c < rank_; ++c) {
      int p = c;
      while (m[p][c] == 0) ++p;
      std::swap(m[p], m[c]);
      Rat inv = 1 / m[c][c];
      for (auto& x : m[c]) x *= inv;
      for (int r = 0; r < rank_; ++r) {
        if (r == c || m[r][c] == 0) continue;
        Rat f = m[r][c];
        for (int k = 0; k <= rank_; ++k) m[r][k] -= f * m[c][k];
      }
    }
    EVec w(dimE_, Rat(0));
    for (int k = 0; k < rank_; ++k) w = w + m[k][rank_] * simpleE_[k];
    return w;
  }

  /// All mu in Gamma_+ with height(mu) <= depth, sorted by height then lexicographically descending.
  std::vector<RootVec> cone(int depth) const {
    std::vector<RootVec> out;
    RootVec cur(rank_, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
      if (i == rank_) {
        out.push_back(cur);
        return;
      }
      for (int c = 0; c <= left; ++c) {
        cur[i] = c;
        rec(i + 1, left - c);
      }
      cur[i] = 0;
    };
    rec(0, depth);
    std::sort(out.begin(), out.end(), [](const RootVec& a, const RootVec& b) {
      if (height(a) != height(b)) return height(a) < height(b);
      return a > b;
    });
    return out;
  }

 private:
  RootType type_;
  int rank_;
  int dimE_ = 0;
  std::vector<EVec> simpleE_;
  std::vector<RootVec> positive_;
  EVec rho_;
};

/// Finite-order torus point: eps_i(t) = zeta_N^{a_i}.
struct TorusPoint {
  int order = 1;
  std::vector<int> exponents;

  /// Exponent k with gamma(t) = zeta_N^k, 0 <= k < N.
  int exponent(const EVec& gamma) const {
    long s = 0;
    for (std::size_t i = 0; i < gamma.size(); ++i) s += toInt(gamma[i]) * exponents[i];
    return static_cast<int>(((s % order) + order) % order);
  }
};

/// Centralizer data of a torus point: R_k = {alpha : alpha(t) = 1}.
struct CentralizerData {
  std::vector<RootVec> positiveK;  ///< R_k^+
  std::vector<RootVec> simpleK;    ///< Pi_k
  std::vector<int> levi;           ///< indices i with alpha_i in Pi_k (that is, Pi_l)
  std::vector<RootVec> pseudo;     ///< Pi_{k/l}: elements of Pi_k not simple in g
  EVec kappa;                      ///< half-sum of R_k^+
  bool pseudoLevi = false;

  bool inK(const RootVec& r) const { return std::find(positiveK.begin(), positiveK.end(), r) != positiveK.end(); }
};

inline CentralizerData centralizer(const RootSystem& rs, const TorusPoint& t) {
  if (static_cast<int>(t.exponents.size()) != rs.dimE())
    throw std::invalid_argument("torus exponent vector has wrong length");
  CentralizerData cd;
  for (const auto& r : rs.positive())
    if (t.exponent(rs.toE(r)) == 0) cd.positiveK.push_back(r);
  for (const auto& r : cd.positiveK) {
    bool decomposable = false;
    for (const auto& a : cd.positiveK) {
      RootVec b = r - a;
      if (isNonnegative(b) && !isZeroVec(b) && cd.inK(b)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) cd.simpleK.push_back(r);
  }
  for (const auto& r : cd.simpleK) {
    int i = rs.simpleIndex(r);
    if (i >= 0)
      cd.levi.push_back(i);
    else
      cd.pseudo.push_back(r);
  }
  std::sort(cd.levi.begin(), cd.levi.end());
  cd.pseudoLevi = !cd.pseudo.empty();
  cd.kappa = EVec(rs.dimE(), Rat(0));
  for (const auto& r : cd.positiveK) cd.kappa = cd.kappa + rs.toE(r);
  cd.kappa = Rat(1, 2) * cd.kappa;
  return cd;
}

/// Positive roots of g that are not roots of the Levi part l (spanned by Pi_l).
inline std::vector<RootVec> complementOfLevi(const RootSystem& rs, const CentralizerData& cd) {
  std::vector<RootVec> out;
  for (const auto& r : rs.positive()) {
    bool inL = true;
    for (int i = 0; i < rs.rank(); ++i)
      if (r[i] != 0 && std::find(cd.levi.begin(), cd.levi.end(), i) == cd.levi.end()) inL = false;
    if (!inL) out.push_back(r);
  }
  return out;
}

/// Positive roots of g outside R_k.
inline std::vector<RootVec> complementOfCentralizer(const RootSystem& rs, const CentralizerData& cd) {
  std::vector<RootVec> out;
  for (const auto& r : rs.positive())
    if (!cd.inK(r)) out.push_back(r);
  return out;
}

/// Multiplicative weight: q^{(zeta, gamma)} = zeta_N^{sum gamma_i r_i} q^{(x, gamma)}
/// for gamma in the root lattice, optionally shifted by eps along epsDir.
struct MultWeight {
  int order = 0;              ///< cyclotomic order of the root-of-unity part (0: trivial)
  std::vector<int> unity;     ///< root-of-unity exponents on simple roots
  EVec x;                     ///< q-exponent part in epsilon coordinates
  EVec epsDir;                ///< eps-shift direction; empty when unshifted
  int epsOrder = 0;           ///< truncation order of eps-expansions

  static MultWeight classical(const RootSystem& rs, const EVec& x) {
    MultWeight w;
    w.unity.assign(rs.rank(), 0);
    w.x = x;
    return w;
  }

  bool shifted() const { return !epsDir.empty(); }

  /// zeta - mu for mu in the root lattice.
  MultWeight minus(const RootSystem& rs, const RootVec& mu) const {
    MultWeight w = *this;
    w.x = x - rs.toE(mu);
    return w;
  }
  /// zeta + nu for an integral weight nu given in epsilon coordinates.
  MultWeight plus(const EVec& nu) const {
    MultWeight w = *this;
    w.x = x + nu;
    return w;
  }
  MultWeight withShift(const EVec& dir, int order) const {
    MultWeight w = *this;
    w.epsDir = dir;
    w.epsOrder = order;
    return w;
  }

  /// Root-of-unity part of q^{(zeta, gamma)} as an exponent of zeta_N.
  int unityExponent(const RootVec& gamma) const {
    if (order == 0) return 0;
    long s = 0;
    for (std::size_t i = 0; i < gamma.size(); ++i) s += static_cast<long>(gamma[i]) * unity[i];
    return static_cast<int>(((s % order) + order) % order);
  }

  /// q^{(zeta, gamma)} at eps = 0.
  FieldElem pairing(const RootSystem& rs, const RootVec& gamma) const {
    Rat e = 2 * dot(x, rs.toE(gamma));
    int k = static_cast<int>(toInt(e));
    Cyclotomic c = order == 0 ? Cyclotomic(1L) : Cyclotomic::rootOfUnity(order, unityExponent(gamma));
    return FieldElem(LaurentV::monomial(c, k));
  }

  friend bool operator==(const MultWeight& a, const MultWeight& b) {
    return a.order == b.order && a.unity == b.unity && a.x == b.x && a.epsDir == b.epsDir;
  }
  friend bool operator<(const MultWeight& a, const MultWeight& b) {
    if (a.order != b.order) return a.order < b.order;
    if (a.unity != b.unity) return a.unity < b.unity;
    if (a.x != b.x) return a.x < b.x;
    return a.epsDir < b.epsDir;
  }
};

/// Base weight: q^{(lambda, alpha)} = sign * sqrt(alpha(t)) q^{(kappa - rho, alpha)} for simple alpha.
inline MultWeight baseWeight(const RootSystem& rs, const TorusPoint& t, const std::vector<int>& signs) {
  if (static_cast<int>(signs.size()) != rs.rank()) throw std::invalid_argument("one sign per simple root expected");
  CentralizerData cd = centralizer(rs, t);
  MultWeight w;
  w.order = t.order;
  w.unity.resize(rs.rank());
  for (int i = 0; i < rs.rank(); ++i) {
    int c = t.exponent(rs.simpleE()[i]);
    if (c % 2 != 0)
      throw std::domain_error("alpha_" + std::to_string(i + 1) + "(t) has no square root in Q(zeta_" +
                              std::to_string(t.order) + ")");
    int e = c / 2;
    if (signs[i] < 0) {
      if (t.order % 2 != 0) throw std::domain_error("-1 is not a power of zeta_N for odd N");
      e += t.order / 2;
    }
    w.unity[i] = e % t.order;
  }
  w.x = cd.kappa - rs.rho();
  return w;
}

/// Kostant partition function: number of ways to write mu as a sum of positive roots.
class KostantCounter {
 public:
  explicit KostantCounter(const RootSystem& rs) : roots_(rs.positive()) {}

  mpz_class operator()(const RootVec& mu) const {
    if (!isNonnegative(mu)) throw std::domain_error("kostant: weight outside the positive cone");
    std::lock_guard<std::mutex> lock(guard_);
    return count(mu, 0);
  }

 private:
  mpz_class count(const RootVec& mu, std::size_t from) const {
    if (isZeroVec(mu)) return 1;
    if (from == roots_.size()) return 0;
    auto key = std::make_pair(mu, from);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    mpz_class total = 0;
    RootVec rest = mu;
    while (isNonnegative(rest)) {
      total += count(rest, from + 1);
      rest = rest - roots_[from];
    }
    memo_.emplace(key, total);
    return total;
  }

  std::vector<RootVec> roots_;
  mutable std::mutex guard_;
  mutable std::map<std::pair<RootVec, std::size_t>, mpz_class> memo_;
};

inline mpz_class kostant(const RootSystem& rs, const RootVec& mu) { return KostantCounter(rs)(mu); }

/// Coefficients of prod_{alpha in roots} (1 - e^{-alpha})^{-1} up to total height depth.
inline std::map<RootVec, mpz_class> productExpansion(const RootSystem& rs, const std::vector<RootVec>& roots,
                                                     int depth) {
  std::map<RootVec, mpz_class> coeff;
  coeff[rs.zero()] = 1;
  for (const auto& a : roots) {
    // Multiply by the geometric series in e^{-a}; process in increasing height.
    auto cone = rs.cone(depth);
    for (const auto& mu : cone) {
      RootVec prev = mu - a;
      if (!isNonnegative(prev)) continue;
      auto it = coeff.find(prev);
      if (it == coeff.end()) continue;
      coeff[mu] += it->second;
    }
  }
  std::map<RootVec, mpz_class> out;
  for (const auto& mu : rs.cone(depth)) {
    auto it = coeff.find(mu);
    out[mu] = it == coeff.end() ? mpz_class(0) : it->second;
  }
  return out;
}

/// Character of the base module: product over R^+_{g/k} (see README for the choice of complement).
inline std::map<RootVec, mpz_class> productCharacter(const RootSystem& rs, const CentralizerData& cd, int depth) {
  return productExpansion(rs, complementOfCentralizer(rs, cd), depth);
}

/// Pairs (beta, m) with height(m beta) <= depth and q^{2(zeta+rho, beta)} = q^{m (beta, beta)} exactly.
inline std::vector<std::pair<RootVec, int>> kkScan(const RootSystem& rs, const MultWeight& zeta, int depth) {
  std::vector<std::pair<RootVec, int>> hits;
  for (const auto& beta : rs.positive()) {
    FieldElem lhs = zeta.pairing(rs, beta).pow(2) * FieldElem::qpow(2 * dot(rs.rho(), rs.toE(beta)));
    for (int m = 1; m * height(beta) <= depth; ++m)
      if (lhs == FieldElem::qpow(m * rs.inner(beta, beta))) hits.emplace_back(beta, m);
  }
  return hits;
}

}  // namespace qcc
