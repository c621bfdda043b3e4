#pragma once

// Shifted extremal projectors and tensor product diagnostics.

#include <iterator>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcc/rootdata.hpp"
#include "qcc/shapovalov.hpp"
#include "qcc/uqcore.hpp"

namespace qcc {

/// A denominator [h + s + i] of a root factor vanished on the input weight.
class ProjectorSingular : public std::domain_error {
 public:
  explicit ProjectorSingular(const std::string& where)
      : std::domain_error("projector singular at this weight: " + where) {}
};

template <class S>
AlgElem<S> liftElem(const AlgElem<FieldElem>& x) {
  AlgElem<S> y;
  y.raising = x.raising;
  y.weight = x.weight;
  y.coords = liftVector<S>(x.coords);
  return y;
}

/// One factor p_gamma(s) of the shifted projector, with s stored as q_gamma^s.
template <class S>
struct ProjectorFactor {
  RootVec root;
  Rat halfNorm;  ///< q_gamma = q^{halfNorm}
  S shift;       ///< q_gamma^{s}
  AlgElem<S> e, f;
  std::optional<int> truncation;  ///< default: the largest k allowed by the weights
};

/// Largest k with e_gamma^k possibly nonzero on V[mu].
template <class S>
int nilpotencyBound(const WeightModule<S>& m, const RootVec& gamma, const RootVec& mu) {
  int k = 0;
  RootVec next = mu - gamma;
  while (isNonnegative(next) && m.dim(next) > 0) {
    ++k;
    next = next - gamma;
  }
  return k;
}

/// p_gamma(s) v for v in V[mu].
template <class S>
std::vector<S> applyRootFactor(const NilpotentAlgebra& alg, const WeightModule<S>& m, const ProjectorFactor<S>& pf,
                               const RootVec& mu, const std::vector<S>& v) {
  int bound = pf.truncation ? *pf.truncation : nilpotencyBound(m, pf.root, mu);
  const S qg(FieldElem::qpow(pf.halfNorm));
  const S k0 = m.cartan(pf.root, mu);
  const S step = pf.shift * qg.inverse();
  std::vector<S> out = v;
  std::vector<S> ek = v;
  RootVec at = mu;
  S coef(1L);
  for (int k = 1; k <= bound; ++k) {
    RootVec next = at - pf.root;
    if (!isNonnegative(next)) break;
    ek = applyElem(alg, m, pf.e, at, ek);
    at = next;
    if (isZeroVector(ek)) break;
    S denom = qBracket<S>(k0 * pf.shift * S(FieldElem::qpow(pf.halfNorm * k)), pf.halfNorm);
    if (isZero(denom)) throw ProjectorSingular("root factor at depth " + rootString(mu));
    coef = coef * S(-1L) * step * (qBracket<S>(S(FieldElem::qpow(pf.halfNorm * k)), pf.halfNorm) * denom).inverse();
    std::vector<S> fk = ek;
    RootVec up = at;
    for (int j = 0; j < k; ++j) {
      fk = applyElem(alg, m, pf.f, up, fk);
      up = up + pf.root;
    }
    for (std::size_t r = 0; r < out.size(); ++r)
      if (!isZero(fk[r])) out[r] = out[r] + coef * fk[r];
  }
  return out;
}

/// p_g(zeta) = p_{a1}(rho_1 + zeta_1) ... p_{an}(rho_n + zeta_n) over a convex order.
template <class S>
class ShiftedProjector {
 public:
  ShiftedProjector(std::shared_ptr<const NilpotentAlgebra> alg, const RootVectors& rv, const MultWeight& zeta)
      : alg_(std::move(alg)), zeta_(zeta), order_(rv.order()) {
    const auto& rs = alg_->roots();
    for (const auto& d : rv.all()) {
      ProjectorFactor<S> pf;
      pf.root = d.root;
      pf.halfNorm = rs.halfNorm(d.root);
      pf.shift = weightPairing<S>(rs, zeta, d.root) * S(FieldElem::qpow(dot(rs.rho(), rs.toE(d.root))));
      pf.e = liftElem<S>(d.e);
      pf.f = liftElem<S>(d.f);
      factors_.push_back(std::move(pf));
    }
  }

  const std::vector<ProjectorFactor<S>>& factors() const { return factors_; }
  const MultWeight& shift() const { return zeta_; }
  const std::vector<RootVec>& order() const { return order_; }

  std::vector<S> apply(const WeightModule<S>& m, const RootVec& mu, std::vector<S> v) const {
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) v = applyRootFactor(*alg_, m, *it, mu, v);
    return v;
  }

  /// Matrix of p_g(zeta) on V[mu].
  Matrix<S> matrix(const WeightModule<S>& m, const RootVec& mu) const {
    std::size_t d = m.dim(mu);
    std::vector<std::vector<S>> cols;
    for (std::size_t k = 0; k < d; ++k) {
      std::vector<S> x(d);
      x[k] = S(1L);
      cols.push_back(apply(m, mu, x));
    }
    return Matrix<S>::fromColumns(d, cols);
  }

 private:
  std::shared_ptr<const NilpotentAlgebra> alg_;
  MultWeight zeta_;
  std::vector<RootVec> order_;
  std::vector<ProjectorFactor<S>> factors_;
};

/// True when every e_i kills v in V[mu].
template <class S>
bool isExtremalVector(const WeightModule<S>& m, const RootVec& mu, const std::vector<S>& v) {
  const auto& rs = m.roots();
  for (int i = 0; i < rs.rank(); ++i) {
    RootVec below = mu - rs.simple(i);
    if (!isNonnegative(below) || m.dim(below) == 0) continue;
    if (!isZeroVector(mulVec(m.raise(i, mu), v))) return false;
  }
  return true;
}

/// Canonical form on (V x Z)[mu]: the product of the omega-forms of the factors.
template <class S>
Matrix<S> tensorForm(const TensorModule<S>& t, const GramCache<S>& zForm, const RootVec& mu) {
  std::size_t d = t.dim(mu);
  Matrix<S> g(d, d);
  for (const auto& b : t.blocks(mu)) {
    const auto gv = t.left().form(b.mu1).scaled(omegaScale(t.left(), b.mu1));
    const auto gz = zForm(b.mu2).scaled(omegaScale(t.right(), b.mu2));
    for (std::size_t a = 0; a < b.d1; ++a)
      for (std::size_t a2 = 0; a2 < b.d1; ++a2) {
        if (isZero(gv(a, a2))) continue;
        for (std::size_t c = 0; c < b.d2; ++c)
          for (std::size_t c2 = 0; c2 < b.d2; ++c2)
            if (!isZero(gz(c, c2)))
              g(TensorModule<S>::index(b, a, c), TensorModule<S>::index(b, a2, c2)) = gv(a, a2) * gz(c, c2);
      }
  }
  return g;
}

template <class S>
S bilinear(const std::vector<S>& x, const Matrix<S>& g, const std::vector<S>& y) {
  S r;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (isZero(x[i])) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (!isZero(g(i, j)) && !isZero(y[j])) r = r + x[i] * g(i, j) * y[j];
  }
  return r;
}

/// Smallest m >= 1 with q^{2(zeta + rho, alpha)} = q^{m (alpha, alpha)}, up to maxDegree.
inline std::optional<int> kacKazhdanDegree(const ShapovalovEngine& eng, const MultWeight& zeta, const RootVec& alpha,
                                           int maxDegree) {
  for (int m = 1; m <= maxDegree; ++m)
    if (eng.kacKazhdan(zeta, alpha, m)) return m;
  return std::nullopt;
}

/// Generator phi_alpha^{m_alpha}(zeta) 1_zeta of the kernel of M_zeta -> M_{lambda,xi}.
struct ParabolicGenerator {
  RootVec root;
  int m = 1;
  AlgElem<FieldElem> phi;  ///< of weight m * root
};

/// M_{lambda,xi}: the Verma module at zeta = lambda + xi modulo the submodules generated by
/// Shapovalov elements attached to Pi_k, built up to a height bound.
struct GeneralizedParabolic {
  MultWeight lambda;
  EVec xi;
  MultWeight zeta;
  int depth = 0;
  std::vector<ParabolicGenerator> generators;
  std::shared_ptr<VermaModule<FieldElem>> verma;
  std::shared_ptr<QuotientModule<FieldElem>> module;
  std::shared_ptr<GramCache<FieldElem>> form;
};

/// Shapovalov generators at zeta for the simple roots of k, up to weight height maxHeight.
inline std::vector<ParabolicGenerator> parabolicGenerators(const ShapovalovEngine& eng, const CentralizerData& cd,
                                                           const MultWeight& zeta, int maxHeight) {
  std::vector<ParabolicGenerator> out;
  for (const auto& alpha : cd.simpleK) {
    auto m = kacKazhdanDegree(eng, zeta, alpha, maxHeight / height(alpha));
    if (!m) continue;
    out.push_back({alpha, *m, eng.element(alpha, *m, zeta).value});
  }
  return out;
}

inline GeneralizedParabolic generalizedParabolic(const ShapovalovEngine& eng, const CentralizerData& cd,
                                                 const MultWeight& lambda, const EVec& xi, int depth) {
  GeneralizedParabolic gp;
  gp.lambda = lambda;
  gp.xi = xi;
  gp.zeta = lambda.plus(xi);
  gp.depth = depth;
  gp.verma = std::make_shared<VermaModule<FieldElem>>(eng.algebraPtr(), gp.zeta);
  gp.generators = parabolicGenerators(eng, cd, gp.zeta, depth);
  std::vector<std::pair<RootVec, std::vector<FieldElem>>> gens;
  for (const auto& g : gp.generators) gens.emplace_back(g.phi.weight, g.phi.coords);
  gp.module = submoduleQuotient<FieldElem>(gp.verma, std::move(gens));
  gp.form = std::make_shared<GramCache<FieldElem>>(gp.module);
  return gp;
}

/// Weight-graded basis of a subspace of a finite module.
using GradedBasis = std::map<RootVec, std::vector<std::vector<FieldElem>>>;

inline std::size_t gradedDim(const GradedBasis& b) {
  std::size_t n = 0;
  for (const auto& [mu, vs] : b) n += vs.size();
  return n;
}

/// V^+_xi: the joint kernel of sigma(phi_alpha^{m_alpha}) over the generators.
inline GradedBasis vPlus(const NilpotentAlgebra& alg, const FiniteModule<FieldElem>& v,
                         const std::vector<ParabolicGenerator>& generators) {
  GradedBasis out;
  for (const auto& mu : v.depths()) {
    std::size_t d = v.dim(mu);
    Matrix<FieldElem> stacked(0, d);
    for (const auto& g : generators) {
      AlgElem<FieldElem> up = g.phi;
      up.raising = true;
      RootVec below = mu - up.weight;
      if (!isNonnegative(below) || v.dim(below) == 0) continue;
      std::vector<std::vector<FieldElem>> cols;
      for (std::size_t k = 0; k < d; ++k) {
        std::vector<FieldElem> x(d);
        x[k] = FieldElem(1L);
        cols.push_back(applyElem(alg, v, up, mu, x));
      }
      auto m = Matrix<FieldElem>::fromColumns(v.dim(below), cols);
      for (std::size_t r = 0; r < m.rows(); ++r) stacked.appendRow(m.row(r));
    }
    std::vector<std::vector<FieldElem>> kernel;
    if (stacked.rows() == 0) {
      for (std::size_t k = 0; k < d; ++k) {
        std::vector<FieldElem> x(d);
        x[k] = FieldElem(1L);
        kernel.push_back(std::move(x));
      }
    } else {
      kernel = nullspace(stacked);
    }
    if (!kernel.empty()) out[mu] = std::move(kernel);
  }
  return out;
}

/// Extremal twist data on one weight space V[mu].
struct TwistWeight {
  RootVec mu;
  EVec weight;                                    ///< weight of V[mu]
  std::vector<std::vector<FieldElem>> basis;      ///< V^+_xi[mu] in V[mu] coordinates
  std::vector<std::vector<FieldElem>> preimages;  ///< chosen p_g(zeta)-preimages
  std::vector<std::vector<FieldElem>> extremal;   ///< delta_V(basis) in (V x Z)[mu]
  Matrix<FieldElem> theta;                        ///< (theta(v_i), v_j) = (delta_V v_i, delta_V v_j)
  Matrix<FieldElem> induced;                      ///< p_g(zeta) on V[mu]
  FieldElem determinant;
  bool inverseVerified = false;                   ///< theta o p_g(zeta) = id on V/omega(J+)V
};

struct TwistData {
  MultWeight lambda;
  EVec xi;
  std::vector<TwistWeight> weights;
  bool invertible = false;
  std::optional<std::string> diagnostic;
};

/// Solves sum_k c_k basis_k = x.
inline std::optional<std::vector<FieldElem>> coordinatesIn(const std::vector<std::vector<FieldElem>>& basis,
                                                          const std::vector<FieldElem>& x) {
  auto sol = solve(Matrix<FieldElem>::fromColumns(x.size(), basis), x);
  if (!sol.consistent) return std::nullopt;
  return sol.particular;
}

/// Builds delta_V from the shifted projector and the extremal twist theta on V^+_xi.
inline TwistData extremalTwist(std::shared_ptr<const NilpotentAlgebra> alg,
                               std::shared_ptr<const FiniteModule<FieldElem>> v, const GeneralizedParabolic& z,
                               const RootVectors& rv) {
  const auto& rs = alg->roots();
  int reach = 0;
  for (const auto& mu : v->depths()) reach = std::max(reach, height(mu));
  if (z.depth < reach)
    throw std::invalid_argument("parabolic module truncated at height " + std::to_string(z.depth) +
                                " below the module height " + std::to_string(reach));
  TwistData td;
  td.lambda = z.lambda;
  td.xi = z.xi;
  td.invertible = true;
  auto plus = vPlus(*alg, *v, z.generators);
  TensorModule<FieldElem> tensor(v, z.module);
  ShiftedProjector<FieldElem> shifted(alg, rv, z.zeta);
  ShiftedProjector<FieldElem> plain(alg, rv, MultWeight::classical(rs, EVec(rs.dimE(), Rat(0))));
  for (auto& [mu, basis] : plus) {
    TwistWeight tw;
    tw.mu = mu;
    tw.weight = v->weightOf(mu);
    tw.basis = basis;
    try {
      tw.induced = shifted.matrix(*v, mu);
    } catch (const ProjectorSingular& e) {
      td.invertible = false;
      td.diagnostic = e.what();
      return td;
    }
    const auto* top = [&]() -> const TensorModule<FieldElem>::Block* {
      for (const auto& b : tensor.blocks(mu))
        if (b.mu1 == mu) return &b;
      return nullptr;
    }();
    if (!top) throw std::logic_error("missing V x 1_Z block");
    std::size_t dt = tensor.dim(mu);
    for (const auto& w : basis) {
      auto sol = solve(tw.induced, w);
      if (!sol.consistent) {
        td.invertible = false;
        td.diagnostic = "p_g(zeta) is not onto V^+ at depth " + rootString(mu);
        return td;
      }
      std::vector<FieldElem> lifted(dt);
      for (std::size_t a = 0; a < top->d1; ++a) lifted[TensorModule<FieldElem>::index(*top, a, 0)] = sol.particular[a];
      std::vector<FieldElem> delta;
      try {
        delta = plain.apply(tensor, mu, lifted);
      } catch (const ProjectorSingular& e) {
        td.invertible = false;
        td.diagnostic = e.what();
        return td;
      }
      if (!isExtremalVector(tensor, mu, delta)) throw std::logic_error("projector output is not extremal");
      tw.preimages.push_back(std::move(sol.particular));
      tw.extremal.push_back(std::move(delta));
    }
    auto g = tensorForm(tensor, *z.form, mu);
    std::size_t n = basis.size();
    tw.theta = Matrix<FieldElem>(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) tw.theta(i, j) = bilinear(tw.extremal[i], g, tw.extremal[j]);
    tw.determinant = determinant(tw.theta);
    if (tw.determinant.isZero()) {
      td.invertible = false;
      if (!td.diagnostic) td.diagnostic = "not completely reducible at this q: theta degenerate at depth " + rootString(mu);
    } else {
      // theta(p_g(zeta) u) pairs with w as u does, for every u in V[mu] and w in V^+.
      const auto gv = v->form(mu).scaled(omegaScale(*v, mu));
      std::size_t d = v->dim(mu);
      bool ok = true;
      for (std::size_t k = 0; k < d && ok; ++k) {
        auto image = tw.induced.column(k);
        auto c = coordinatesIn(basis, image);
        if (!c) {
          ok = false;
          break;
        }
        for (std::size_t j = 0; j < n && ok; ++j) {
          FieldElem lhs;
          for (std::size_t i = 0; i < n; ++i) lhs = lhs + (*c)[i] * tw.theta(i, j);
          FieldElem rhs;
          for (std::size_t r = 0; r < d; ++r) rhs = rhs + gv(k, r) * basis[j][r];
          if (!(lhs == rhs)) ok = false;
        }
      }
      tw.inverseVerified = ok;
      if (!ok) {
        td.invertible = false;
        td.diagnostic = "theta o p_g(zeta) differs from the identity at depth " + rootString(mu);
      }
    }
    td.weights.push_back(std::move(tw));
  }
  return td;
}

/// Character of the finite-dimensional k-module X_eta as depths below eta, up to a height bound.
inline std::map<RootVec, mpz_class> kCharacter(const RootSystem& rs, const CentralizerData& cd, const EVec& eta,
                                               int depth) {
  EVec y = eta + cd.kappa;
  for (const auto& a : cd.simpleK)
    if (rs.coroot(y, a) <= 0) throw std::domain_error("weight is not k-dominant");
  // Orbit of the regular weight y under W_k, with signs.
  std::map<EVec, int> orbit{{y, 1}};
  std::vector<EVec> frontier{y};
  while (!frontier.empty()) {
    std::vector<EVec> next;
    for (const auto& x : frontier)
      for (const auto& a : cd.simpleK) {
        EVec r = x - rs.coroot(x, a) * rs.toE(a);
        if (orbit.count(r)) continue;
        orbit[r] = -orbit[x];
        next.push_back(r);
      }
    frontier = std::move(next);
  }
  auto denom = productExpansion(rs, cd.positiveK, depth);
  std::map<RootVec, mpz_class> out;
  for (const auto& mu : rs.cone(depth)) out[mu] = 0;
  for (const auto& [x, sign] : orbit) {
    auto shift = rs.toSimple(y - x);
    if (!shift) throw std::logic_error("Weyl orbit left the root lattice");
    for (const auto& [mu, c] : denom) {
      RootVec total = *shift + mu;
      if (height(total) > depth) continue;
      out[total] += sign * c;
    }
  }
  return out;
}

/// Multiplicities of k-modules X_eta in V x X_xi at q = 1 (Brauer-Klimyk), keyed by eta.
/// The module V is given by its weight multiplicities.
inline std::map<EVec, long> classicalHomCounts(const RootSystem& rs, const CentralizerData& cd,
                                               const std::map<EVec, long>& weights, const EVec& xi) {
  std::map<EVec, long> out;
  for (const auto& [nu, mult] : weights) {
    EVec y = xi + nu + cd.kappa;
    long sign = mult;
    bool wall = false;
    for (bool moved = true; moved && !wall;) {
      moved = false;
      for (const auto& a : cd.simpleK) {
        Rat c = rs.coroot(y, a);
        if (c == 0) {
          wall = true;
          break;
        }
        if (c < 0) {
          y = y - c * rs.toE(a);
          sign = -sign;
          moved = true;
        }
      }
    }
    if (wall) continue;
    out[y - cd.kappa] += sign;
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

inline std::map<EVec, long> classicalHomCounts(const RootSystem& rs, const CentralizerData& cd,
                                               const FiniteModule<FieldElem>& v, const EVec& xi) {
  std::map<EVec, long> weights;
  for (const auto& mu : v.depths()) weights[v.weightOf(mu)] += static_cast<long>(v.dim(mu));
  return classicalHomCounts(rs, cd, weights, xi);
}

/// Highest weight submodule of V x Z generated by one extremal vector.
struct Summand {
  RootVec mu;         ///< depth in V x Z
  EVec nu;            ///< weight of V; the highest weight is lambda + xi + nu
  std::vector<FieldElem> vector;
  std::map<RootVec, std::size_t> character;  ///< dimensions by depth below the highest weight
};

struct Decomposition {
  std::vector<Summand> summands;
  std::map<EVec, long> multiplicities;  ///< by nu
  std::map<EVec, long> classical;       ///< Hom_k counts, by xi + nu
  bool direct = false;                  ///< summands are independent at every depth
  bool balanced = false;                ///< they exhaust V x Z at every depth
  bool multiplicitiesMatch = false;
  bool summandCharactersMatch = false;  ///< each summand has the character Char(X_{xi+nu}) Char(M_lambda)
  int depth = 0;
  std::optional<std::string> diagnostic;
};

inline Decomposition decomposeTensor(std::shared_ptr<const NilpotentAlgebra> alg,
                                     std::shared_ptr<const FiniteModule<FieldElem>> v, const GeneralizedParabolic& z,
                                     const TwistData& td, const CentralizerData& cd, int depth) {
  const auto& rs = alg->roots();
  Decomposition dec;
  dec.depth = depth;
  dec.classical = classicalHomCounts(rs, cd, *v, z.xi);
  if (!td.invertible) {
    dec.diagnostic = td.diagnostic.value_or("extremal twist is not invertible");
    return dec;
  }
  TensorModule<FieldElem> tensor(v, z.module);
  for (const auto& tw : td.weights)
    for (const auto& u : tw.extremal) {
      dec.summands.push_back({tw.mu, tw.weight, u, {}});
      dec.multiplicities[tw.weight] += 1;
    }
  dec.direct = true;
  dec.balanced = true;
  for (const auto& gamma : rs.cone(depth)) {
    std::size_t total = tensor.dim(gamma);
    Matrix<FieldElem> all(0, total);
    std::size_t sum = 0;
    for (auto& sm : dec.summands) {
      RootVec rel = gamma - sm.mu;
      if (!isNonnegative(rel)) continue;
      Matrix<FieldElem> span(0, total);
      for (const auto& w : alg->basis(rel).basis) {
        auto x = applyWord(tensor, Word{false, w}, sm.mu, sm.vector);
        span.appendRow(x);
        all.appendRow(x);
      }
      std::size_t r = span.rows() ? rank(span) : 0;
      if (height(rel) <= depth) sm.character[rel] = r;
      sum += r;
    }
    std::size_t r = all.rows() ? rank(all) : 0;
    if (r != sum) dec.direct = false;
    if (r != total) dec.balanced = false;
  }
  dec.multiplicitiesMatch = true;
  std::map<EVec, long> byHighest;
  for (const auto& [nu, m] : dec.multiplicities) byHighest[z.xi + nu] += m;
  if (byHighest != dec.classical) dec.multiplicitiesMatch = false;
  dec.summandCharactersMatch = true;
  auto base = productCharacter(rs, cd, depth);
  for (const auto& sm : dec.summands) {
    std::map<RootVec, mpz_class> xk;
    try {
      xk = kCharacter(rs, cd, z.xi + sm.nu, depth);
    } catch (const std::domain_error&) {
      dec.summandCharactersMatch = false;
      continue;
    }
    for (const auto& [rel, dim] : sm.character) {
      mpz_class expected = 0;
      for (const auto& [a, ca] : xk) {
        RootVec b = rel - a;
        if (!isNonnegative(b) || ca == 0) continue;
        auto it = base.find(b);
        if (it != base.end()) expected += ca * it->second;
      }
      if (expected != static_cast<long>(dim)) dec.summandCharactersMatch = false;
    }
  }
  return dec;
}

/// Singular vectors and Gram determinants of a highest weight module up to a height bound.
struct IrreducibilityReport {
  struct Entry {
    RootVec mu;
    std::size_t dim = 0;
    FieldElem gramDeterminant;
    std::size_t singular = 0;
  };
  std::vector<Entry> entries;
  int depth = 0;
  bool irreducible = true;  ///< no singular vectors below the top up to depth
};

inline IrreducibilityReport irreducibilityCheck(std::shared_ptr<const HighestWeightModule<FieldElem>> module,
                                                int depth) {
  IrreducibilityReport rep;
  rep.depth = depth;
  GramCache<FieldElem> gram(module);
  for (const auto& mu : module->roots().cone(depth)) {
    IrreducibilityReport::Entry e;
    e.mu = mu;
    e.dim = module->dim(mu);
    e.gramDeterminant = e.dim ? determinant(gram(mu)) : FieldElem(1L);
    if (height(mu) > 0 && e.dim > 0) e.singular = singularVectors(*module, mu).size();
    if (e.singular > 0) rep.irreducible = false;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace qcc
