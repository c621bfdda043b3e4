#pragma once

// Inverse-form lift S^lambda, invariant matrix elements and the equivariant star product.

#include <algorithm>
#include <map>
#include <mutex>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qcc/projector.hpp"
#include "qcc/shapovalov.hpp"
#include "qcc/uqcore.hpp"

namespace qcc {

using FiniteModulePtr = std::shared_ptr<const FiniteModule<FieldElem>>;

/// Right legs V_1 x ... x V_k of a Peter-Weyl block; U_q(g) acts by the iterated coproduct.
/// Left legs (the dual factors) are untouched by every operation here and are left implicit.
class BlockModule {
 public:
  using MultiIndex = std::vector<std::size_t>;  ///< flat basis index in each factor

  explicit BlockModule(std::vector<FiniteModulePtr> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw std::invalid_argument("a block needs at least one factor");
    for (const auto& f : factors_) flats_.emplace_back(*f);
    if (factors_.size() == 1) {
      module_ = factors_.front();
    } else {
      rest_ = std::make_shared<BlockModule>(std::vector<FiniteModulePtr>(factors_.begin() + 1, factors_.end()));
      tensor_ = std::make_shared<TensorModule<FieldElem>>(factors_.front(), rest_->module_);
      module_ = tensor_;
    }
  }

  const std::vector<FiniteModulePtr>& factors() const { return factors_; }
  const WeightModule<FieldElem>& module() const { return *module_; }

  /// Basis of the weight space at depth mu, as multi-indices in module coordinate order.
  const std::vector<MultiIndex>& coordinates(const RootVec& mu) const {
    std::lock_guard<std::recursive_mutex> lock(guard_);
    auto it = coords_.find(mu);
    if (it != coords_.end()) return it->second;
    std::vector<MultiIndex> out;
    if (!tensor_) {
      for (std::size_t k = 0; k < factors_.front()->dim(mu); ++k) out.push_back({flats_.front().index(mu, k)});
    } else {
      for (const auto& b : tensor_->blocks(mu)) {
        const auto& tail = rest_->coordinates(b.mu2);
        for (std::size_t a = 0; a < b.d1; ++a)
          for (std::size_t c = 0; c < b.d2; ++c) {
            MultiIndex m{flats_.front().index(b.mu1, a)};
            m.insert(m.end(), tail[c].begin(), tail[c].end());
            out.push_back(std::move(m));
          }
      }
    }
    return coords_.emplace(mu, std::move(out)).first->second;
  }

  RootVec depthOf(const MultiIndex& m) const {
    RootVec d = factors_.front()->roots().zero();
    for (std::size_t k = 0; k < m.size(); ++k) d = d + flats_[k].depth(m[k]);
    return d;
  }

  std::size_t position(const RootVec& mu, const MultiIndex& m) const {
    const auto& c = coordinates(mu);
    for (std::size_t k = 0; k < c.size(); ++k)
      if (c[k] == m) return k;
    throw std::out_of_range("multi-index not in weight space");
  }

  /// Largest height of a weight space.
  int span() const {
    int h = 0;
    for (const auto& f : factors_) {
      int hf = 0;
      for (const auto& mu : f->depths()) hf = std::max(hf, height(mu));
      h += hf;
    }
    return h;
  }

 private:
  std::vector<FiniteModulePtr> factors_;
  std::vector<FlatBasis<FieldElem>> flats_;
  std::shared_ptr<BlockModule> rest_;
  std::shared_ptr<TensorModule<FieldElem>> tensor_;
  std::shared_ptr<const WeightModule<FieldElem>> module_;
  mutable std::recursive_mutex guard_;
  mutable std::map<RootVec, std::vector<MultiIndex>> coords_;
};

/// Weight multiplicities of a block, in epsilon coordinates.
inline std::map<EVec, long> blockWeights(const BlockModule& b) {
  std::map<EVec, long> acc{{EVec(b.factors().front()->roots().dimE(), Rat(0)), 1}};
  for (const auto& f : b.factors()) {
    std::map<EVec, long> next;
    for (const auto& [x, m] : acc)
      for (const auto& mu : f->depths()) next[x + f->weightOf(mu)] += m * static_cast<long>(f->dim(mu));
    acc = std::move(next);
  }
  return acc;
}

/// Shares BlockModule instances between equal factor lists.
class BlockRegistry {
 public:
  std::shared_ptr<const BlockModule> get(const std::vector<FiniteModulePtr>& factors) {
    std::vector<const void*> key;
    for (const auto& f : factors) key.push_back(f.get());
    std::lock_guard<std::mutex> lock(guard_);
    auto it = blocks_.find(key);
    if (it != blocks_.end()) return it->second;
    auto b = std::make_shared<BlockModule>(factors);
    blocks_.emplace(key, b);
    return b;
  }

 private:
  std::mutex guard_;
  std::map<std::vector<const void*>, std::shared_ptr<const BlockModule>> blocks_;
};

/// Vector in a block, stored sparsely by multi-index.
struct BlockElement {
  std::shared_ptr<const BlockModule> block;
  std::map<BlockModule::MultiIndex, FieldElem> coeffs;

  bool isZero() const {
    for (const auto& [k, c] : coeffs)
      if (!c.isZero()) return false;
    return true;
  }
  void add(const BlockModule::MultiIndex& m, const FieldElem& c) {
    if (c.isZero()) return;
    auto& slot = coeffs[m];
    slot = slot + c;
    if (slot.isZero()) coeffs.erase(m);
  }
  /// Components grouped by depth, in module coordinates.
  std::map<RootVec, std::vector<FieldElem>> components() const {
    std::map<RootVec, std::vector<FieldElem>> out;
    for (const auto& [m, c] : coeffs) {
      RootVec mu = block->depthOf(m);
      auto& v = out[mu];
      if (v.empty()) v.assign(block->coordinates(mu).size(), FieldElem());
      v[block->position(mu, m)] = c;
    }
    return out;
  }
  static BlockElement fromComponent(std::shared_ptr<const BlockModule> b, const RootVec& mu,
                                    const std::vector<FieldElem>& v) {
    BlockElement e{std::move(b), {}};
    const auto& c = e.block->coordinates(mu);
    for (std::size_t k = 0; k < v.size(); ++k) e.add(c[k], v[k]);
    return e;
  }
};

inline bool operator==(const BlockElement& a, const BlockElement& b) {
  return a.block->factors() == b.block->factors() && a.coeffs == b.coeffs;
}

/// Applies a homogeneous element of U_q(n_+) or U_q(n_-) to a block element.
inline BlockElement applyToBlock(const NilpotentAlgebra& alg, const AlgElem<FieldElem>& x, const BlockElement& e) {
  BlockElement out{e.block, {}};
  const auto& m = e.block->module();
  for (const auto& [mu, v] : e.components()) {
    RootVec target = x.raising ? mu - x.weight : mu + x.weight;
    if (!isNonnegative(target) || m.dim(target) == 0) continue;
    auto y = applyElem(alg, m, x, mu, v);
    const auto& c = e.block->coordinates(target);
    for (std::size_t k = 0; k < y.size(); ++k) out.add(c[k], y[k]);
  }
  return out;
}

inline BlockElement applyWordToBlock(const BlockElement& e, const Word& w) {
  BlockElement out{e.block, {}};
  const auto& m = e.block->module();
  const auto& rs = m.roots();
  for (const auto& [mu, v] : e.components()) {
    RootVec target = mu;
    for (int l : w.letters) target = w.raising ? target - rs.simple(l) : target + rs.simple(l);
    if (!isNonnegative(target) || m.dim(target) == 0) continue;
    auto y = applyWord(m, w, mu, v);
    const auto& c = e.block->coordinates(target);
    for (std::size_t k = 0; k < y.size(); ++k) out.add(c[k], y[k]);
  }
  return out;
}

/// Drops trivial one-dimensional factors so that blocks differing by unit factors compare equal.
struct CanonicalElement {
  std::vector<const void*> factors;
  std::map<BlockModule::MultiIndex, FieldElem> coeffs;
  friend bool operator==(const CanonicalElement&, const CanonicalElement&) = default;
};

inline CanonicalElement canonical(const BlockElement& e) {
  std::vector<bool> keep;
  CanonicalElement out;
  for (const auto& f : e.block->factors()) {
    bool trivial = f->totalDim() == 1 && std::all_of(f->top().x.begin(), f->top().x.end(), [](const Rat& r) { return r == 0; });
    keep.push_back(!trivial);
    if (!trivial) out.factors.push_back(f.get());
  }
  for (const auto& [m, c] : e.coeffs) {
    BlockModule::MultiIndex k;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (keep[i]) k.push_back(m[i]);
    out.coeffs[k] = out.coeffs[k] + c;
  }
  return out;
}

/// One weight component of S^lambda: sum_{ij} coeffs(i,j) sigma(F_i) x F_j.
struct SLiftComponent {
  RootVec mu;
  std::vector<Letters> words;  ///< lowering words F_i whose images span M_lambda[mu]
  Matrix<FieldElem> coeffs;    ///< inverse of the omega-form Gram matrix of the words
  Matrix<FieldElem> images;    ///< columns F_i 1_lambda in M_lambda[mu]
};

/// Truncated lift of the inverse contravariant form of M_lambda to U_q(g_+) x U_q(g_-).
struct SLift {
  MultWeight lambda;
  int depth = 0;
  std::vector<SLiftComponent> components;  ///< mu != 0; the weight-zero component is 1 x 1
};

/// Reducibility of the base module detected while inverting its form.
class BaseModuleReducible : public std::domain_error {
 public:
  explicit BaseModuleReducible(const std::string& where)
      : std::domain_error("base module reducible at this depth/q: " + where) {}
};

inline SLift sLift(const NilpotentAlgebra& alg, const GeneralizedParabolic& base, int depth) {
  SLift s;
  s.lambda = base.lambda;
  s.depth = depth;
  const auto& m = *base.module;
  for (const auto& mu : alg.roots().cone(depth)) {
    if (height(mu) == 0) continue;
    std::size_t d = m.dim(mu);
    if (d == 0) continue;
    const auto& words = alg.basis(mu).basis;
    std::vector<std::vector<FieldElem>> images;
    for (const auto& w : words) images.push_back(applyWord(m, Word{false, w}, alg.roots().zero(), {FieldElem(1L)}));
    auto e = rref(Matrix<FieldElem>::fromColumns(d, images));
    if (e.rank() != d) throw std::logic_error("words do not span the base module weight space");
    SLiftComponent c;
    c.mu = mu;
    std::vector<std::vector<FieldElem>> chosen;
    for (auto p : e.pivots) {
      c.words.push_back(words[p]);
      chosen.push_back(images[p]);
    }
    auto x = Matrix<FieldElem>::fromColumns(d, chosen);
    c.images = x;
    auto g = x.transpose() * (*base.form)(mu).scaled(omegaScale(m, mu)) * x;
    try {
      c.coeffs = inverse(g);
    } catch (const std::domain_error&) {
      throw BaseModuleReducible("singular form at depth " + rootString(mu));
    }
    s.components.push_back(std::move(c));
  }
  return s;
}

/// S(v x 1_lambda) in (V x M_lambda)[mu] for v in V[mu].
inline std::vector<FieldElem> applySLift(const NilpotentAlgebra& alg, const SLift& s,
                                         const TensorModule<FieldElem>& tensor, const RootVec& mu,
                                         const std::vector<FieldElem>& v) {
  const auto& left = tensor.left();
  const auto& right = tensor.right();
  std::vector<FieldElem> out(tensor.dim(mu));
  auto place = [&](const RootVec& mu1, const std::vector<FieldElem>& a, const RootVec& mu2,
                   const std::vector<FieldElem>& c, const FieldElem& coef) {
    for (const auto& b : tensor.blocks(mu)) {
      if (b.mu1 != mu1 || b.mu2 != mu2) continue;
      for (std::size_t i = 0; i < b.d1; ++i)
        for (std::size_t j = 0; j < b.d2; ++j)
          if (!a[i].isZero() && !c[j].isZero()) {
            auto& slot = out[TensorModule<FieldElem>::index(b, i, j)];
            slot = slot + coef * a[i] * c[j];
          }
    }
  };
  place(mu, v, alg.roots().zero(), {FieldElem(1L)}, FieldElem(1L));
  for (const auto& comp : s.components) {
    RootVec mu1 = mu - comp.mu;
    if (!isNonnegative(mu1) || left.dim(mu1) == 0) continue;
    for (std::size_t i = 0; i < comp.words.size(); ++i) {
      auto a = applyWord(left, Word{true, comp.words[i]}, mu, v);
      if (isZeroVector(a)) continue;
      for (std::size_t j = 0; j < comp.words.size(); ++j) {
        if (comp.coeffs(i, j).isZero()) continue;
        auto c = applyWord(right, Word{false, comp.words[j]}, alg.roots().zero(), {FieldElem(1L)});
        place(mu1, a, comp.mu, c, comp.coeffs(i, j));
      }
    }
  }
  return out;
}

/// Outcome of the q -> 1 check of S^lambda.
struct ClassicalLimitReport {
  bool passes = true;
  std::optional<RootVec> pole;  ///< first depth with a pole at q = 1
};

inline ClassicalLimitReport classicalLimitS(const SLift& s) {
  ClassicalLimitReport r;
  for (const auto& comp : s.components)
    for (std::size_t i = 0; i < comp.coeffs.rows(); ++i)
      for (std::size_t j = 0; j < comp.coeffs.cols(); ++j) {
        auto lim = limitAtOne(comp.coeffs(i, j));
        if (std::holds_alternative<PoleSignal>(lim)) {
          r.passes = false;
          if (!r.pole) r.pole = comp.mu;
        } else if (!std::get<Cyclotomic>(lim).isZero()) {
          r.passes = false;
        }
      }
  return r;
}

/// Element of T^{(xi,eta)} inside one block: a vector of (ker J^+_xi cap ker J^-_eta)[eta - xi].
struct InvariantElement {
  BlockElement element;
  EVec xi, eta;
};

/// Vector of block (x) M_lambda, stored by (multi-index, depth in M_lambda).
struct SectionVector {
  std::shared_ptr<const BlockModule> block;
  std::map<std::pair<BlockModule::MultiIndex, RootVec>, std::vector<FieldElem>> coeffs;

  void add(const BlockModule::MultiIndex& m, const RootVec& d, const std::vector<FieldElem>& y) {
    if (isZeroVector(y)) return;
    auto key = std::make_pair(m, d);
    auto it = coeffs.find(key);
    if (it == coeffs.end()) {
      coeffs.emplace(key, y);
      return;
    }
    for (std::size_t k = 0; k < y.size(); ++k) it->second[k] = it->second[k] + y[k];
    if (isZeroVector(it->second)) coeffs.erase(it);
  }
};

/// Context for invariants and star products at one base weight.
class StarProduct {
 public:
  StarProduct(const ShapovalovEngine& eng, CentralizerData cd, MultWeight lambda, int depth)
      : eng_(&eng), cd_(std::move(cd)), lambda_(std::move(lambda)), depth_(depth) {
    base_ = generalizedParabolic(eng, cd_, lambda_, EVec(eng.algebra().roots().dimE(), Rat(0)), depth);
    lift_ = sLift(eng.algebra(), base_, depth);
  }

  const SLift& lift() const { return lift_; }
  BlockRegistry& blocks() { return registry_; }
  const NilpotentAlgebra& algebra() const { return eng_->algebra(); }

  /// Generators phi_alpha^{m_alpha}(lambda + w) for alpha in Pi_k.
  const std::vector<ParabolicGenerator>& generators(const EVec& w) const { return generators(w, depth_); }

  /// Generators of height at most maxHeight.
  const std::vector<ParabolicGenerator>& generators(const EVec& w, int maxHeight) const {
    std::lock_guard<std::recursive_mutex> lock(guard_);
    auto key = std::make_pair(w, maxHeight);
    auto it = gens_.find(key);
    if (it != gens_.end()) return it->second;
    return gens_.emplace(key, parabolicGenerators(*eng_, cd_, lambda_.plus(w), maxHeight)).first->second;
  }

  /// Basis of (ker J^+_xi cap ker J^-_eta)[eta - xi] in a block.
  std::vector<InvariantElement> invariants(std::shared_ptr<const BlockModule> block, const EVec& xi,
                                           const EVec& eta) const {
    const auto& rs = algebra().roots();
    const auto& m = block->module();
    auto mu = rs.toSimple(m.top().x - (eta - xi));
    std::vector<InvariantElement> out;
    if (!mu || !isNonnegative(*mu) || m.dim(*mu) == 0) return out;
    auto ops = conditions(*block, *mu, xi, eta);
    std::size_t d = m.dim(*mu);
    std::vector<std::vector<FieldElem>> kernel;
    if (ops.rows() == 0) {
      for (std::size_t k = 0; k < d; ++k) {
        std::vector<FieldElem> x(d);
        x[k] = FieldElem(1L);
        kernel.push_back(std::move(x));
      }
    } else {
      kernel = nullspace(ops);
    }
    for (const auto& v : kernel) out.push_back({BlockElement::fromComponent(block, *mu, v), xi, eta});
    return out;
  }

  /// Membership in T^{(xi,eta)}, verified exactly.
  bool isInvariant(const InvariantElement& x) const {
    const auto& rs = algebra().roots();
    const auto& m = x.element.block->module();
    auto comps = x.element.components();
    if (comps.empty()) return true;
    if (comps.size() != 1) return false;
    const auto& [mu, v] = *comps.begin();
    auto want = rs.toSimple(m.top().x - (x.eta - x.xi));
    if (!want || *want != mu) return false;
    auto ops = conditions(*x.element.block, mu, x.xi, x.eta);
    return ops.rows() == 0 || isZeroVector(mulVec(ops, v));
  }

  /// h * f = (S_1 > f)(S_2 > h) for h in T^{(xi,0)} and f in T^{(0,eta)}; lands in T^{(xi,eta)} on the
  /// block f-legs x h-legs. eta = 0 gives the right action of T^k on sections, xi = 0 the left one.
  InvariantElement multiply(const InvariantElement& h, const InvariantElement& f) {
    if (!isZeroEVec(h.eta) || !isZeroEVec(f.xi))
      throw std::invalid_argument("typing mismatch: expected (xi,0) * (0,eta)");
    int need = std::min(h.element.block->span(), f.element.block->span());
    if (need > lift_.depth) throw std::out_of_range("depth overflow: S-lift needed to height " + std::to_string(need));
    std::vector<FiniteModulePtr> factors = f.element.block->factors();
    const auto& hf = h.element.block->factors();
    factors.insert(factors.end(), hf.begin(), hf.end());
    auto target = registry_.get(factors);
    InvariantElement out{BlockElement{target, {}}, h.xi, f.eta};
    accumulate(out.element, f.element, h.element, FieldElem(1L));
    for (const auto& comp : lift_.components)
      for (std::size_t i = 0; i < comp.words.size(); ++i) {
        auto a = applyWordToBlock(f.element, Word{true, comp.words[i]});
        if (a.isZero()) continue;
        for (std::size_t j = 0; j < comp.words.size(); ++j) {
          if (comp.coeffs(i, j).isZero()) continue;
          auto b = applyWordToBlock(h.element, Word{false, comp.words[j]});
          accumulate(out.element, a, b, comp.coeffs(i, j));
        }
      }
    return out;
  }

  /// The plain product of matrix elements f . h (legs of f first).
  InvariantElement plainProduct(const InvariantElement& h, const InvariantElement& f) {
    std::vector<FiniteModulePtr> factors = f.element.block->factors();
    const auto& hf = h.element.block->factors();
    factors.insert(factors.end(), hf.begin(), hf.end());
    InvariantElement out{BlockElement{registry_.get(factors), {}}, h.xi, f.eta};
    accumulate(out.element, f.element, h.element, FieldElem(1L));
    return out;
  }

  /// S(x (x) 1_lambda) in block (x) M_lambda; exact when the lift reaches the depth of x.
  SectionVector extremalSection(const BlockElement& x) const {
    SectionVector out{x.block, {}};
    const auto& zero = algebra().roots().zero();
    for (const auto& [m, c] : x.coeffs) out.add(m, zero, {c});
    for (const auto& comp : lift_.components)
      for (std::size_t i = 0; i < comp.words.size(); ++i) {
        auto a = applyWordToBlock(x, Word{true, comp.words[i]});
        if (a.isZero()) continue;
        for (std::size_t j = 0; j < comp.words.size(); ++j) {
          if (comp.coeffs(i, j).isZero()) continue;
          auto y = comp.images.column(j);
          for (auto& t : y) t = t * comp.coeffs(i, j);
          for (const auto& [m, c] : a.coeffs) out.add(m, comp.mu, scaled(y, c));
        }
      }
    return out;
  }

  /// f_i acting on block (x) M_lambda by Delta(f) = f (x) 1 + K^{-1} (x) f.
  SectionVector lower(const SectionVector& s, int i) const {
    SectionVector out{s.block, {}};
    const auto& rs = algebra().roots();
    const auto& bm = s.block->module();
    const auto& m = *base_.module;
    for (const auto& [key, y] : s.coeffs) {
      const auto& [idx, d] = key;
      BlockElement unit{s.block, {{idx, FieldElem(1L)}}};
      for (const auto& [idx2, c] : applyWordToBlock(unit, Word{false, {i}}).coeffs) out.add(idx2, d, scaled(y, c));
      RootVec next = d + rs.simple(i);
      if (m.dim(next) == 0) continue;
      FieldElem k = bm.cartan(rs.simple(i), s.block->depthOf(idx)).inverse();
      out.add(idx, next, scaled(mulVec(m.lower(i, d), y), k));
    }
    return out;
  }

  /// (id (x) Phi_h)(s) where Phi_h : M_lambda -> block(h) (x) M_lambda sends 1_lambda to S(h (x) 1_lambda).
  SectionVector composeHom(const SectionVector& s, const BlockElement& h) {
    std::vector<FiniteModulePtr> factors = s.block->factors();
    const auto& hf = h.block->factors();
    factors.insert(factors.end(), hf.begin(), hf.end());
    SectionVector out{registry_.get(factors), {}};
    auto phi = extremalSection(h);
    std::map<Letters, SectionVector> images;
    auto imageOf = [&](const Letters& w) -> const SectionVector& {
      auto it = images.find(w);
      if (it != images.end()) return it->second;
      SectionVector v = phi;
      for (auto l = w.rbegin(); l != w.rend(); ++l) v = lower(v, *l);
      return images.emplace(w, std::move(v)).first->second;
    };
    for (const auto& [key, y] : s.coeffs) {
      const auto& [idx, d] = key;
      std::vector<std::pair<Letters, FieldElem>> expansion;
      if (height(d) == 0) {
        expansion.emplace_back(Letters{}, y.at(0));
      } else {
        const SLiftComponent* comp = nullptr;
        for (const auto& c : lift_.components)
          if (c.mu == d) comp = &c;
        if (!comp) throw std::out_of_range("depth overflow: no lift component at " + rootString(d));
        auto sol = solve(comp->images, y);
        if (!sol.consistent) throw std::logic_error("lift words do not span the base module");
        for (std::size_t k = 0; k < comp->words.size(); ++k) expansion.emplace_back(comp->words[k], sol.particular[k]);
      }
      for (const auto& [w, a] : expansion) {
        if (a.isZero()) continue;
        for (const auto& [key2, z] : imageOf(w).coeffs) {
          BlockModule::MultiIndex joined = idx;
          joined.insert(joined.end(), key2.first.begin(), key2.first.end());
          out.add(joined, key2.second, scaled(z, a));
        }
      }
    }
    return out;
  }

  /// Hom realization: composing Phi_f and Phi_h on M_lambda agrees with Phi_{h * f}.
  bool homRealizationAgrees(const InvariantElement& h, const InvariantElement& f) {
    int span = h.element.block->span() + f.element.block->span();
    if (span > lift_.depth) throw std::out_of_range("depth overflow: S-lift needed to height " + std::to_string(span));
    auto direct = extremalSection(multiply(h, f).element);
    auto composed = composeHom(extremalSection(f.element), h.element);
    return direct.coeffs == composed.coeffs;
  }

 private:
  static bool isZeroEVec(const EVec& x) {
    for (const auto& r : x)
      if (r != 0) return false;
    return true;
  }

  static std::vector<FieldElem> scaled(std::vector<FieldElem> v, const FieldElem& c) {
    for (auto& x : v) x = x * c;
    return v;
  }

  static void accumulate(BlockElement& out, const BlockElement& a, const BlockElement& b, const FieldElem& s) {
    for (const auto& [ma, ca] : a.coeffs)
      for (const auto& [mb, cb] : b.coeffs) {
        BlockModule::MultiIndex m = ma;
        m.insert(m.end(), mb.begin(), mb.end());
        out.add(m, s * ca * cb);
      }
  }

  /// Stacked matrices of sigma(phi(lambda + xi)) and phi(lambda + eta) on the weight space at depth mu.
  Matrix<FieldElem> conditions(const BlockModule& block, const RootVec& mu, const EVec& xi, const EVec& eta) const {
    const auto& m = block.module();
    int reach = std::max(depth_, block.span());
    std::size_t d = m.dim(mu);
    Matrix<FieldElem> ops(0, d);
    auto stack = [&](AlgElem<FieldElem> x) {
      RootVec target = x.raising ? mu - x.weight : mu + x.weight;
      if (!isNonnegative(target) || m.dim(target) == 0) return;
      std::vector<std::vector<FieldElem>> cols;
      for (std::size_t k = 0; k < d; ++k) {
        std::vector<FieldElem> e(d);
        e[k] = FieldElem(1L);
        cols.push_back(applyElem(algebra(), m, x, mu, e));
      }
      auto mat = Matrix<FieldElem>::fromColumns(m.dim(target), cols);
      for (std::size_t r = 0; r < mat.rows(); ++r) ops.appendRow(mat.row(r));
    };
    for (const auto& g : generators(xi, reach)) {
      auto up = g.phi;
      up.raising = true;
      stack(up);
    }
    for (const auto& g : generators(eta, reach)) stack(g.phi);
    return ops;
  }

  const ShapovalovEngine* eng_;
  CentralizerData cd_;
  MultWeight lambda_;
  int depth_;
  GeneralizedParabolic base_;
  SLift lift_;
  BlockRegistry registry_;
  mutable std::recursive_mutex guard_;
  mutable std::map<std::pair<EVec, int>, std::vector<ParabolicGenerator>> gens_;
};

/// Coefficientwise q -> 1 limit; nullopt on a pole.
inline std::optional<std::map<BlockModule::MultiIndex, Cyclotomic>> limitAtOne(const CanonicalElement& e) {
  std::map<BlockModule::MultiIndex, Cyclotomic> out;
  for (const auto& [m, c] : e.coeffs) {
    auto lim = limitAtOne(c);
    if (std::holds_alternative<PoleSignal>(lim)) return std::nullopt;
    const auto& v = std::get<Cyclotomic>(lim);
    if (!v.isZero()) out[m] = v;
  }
  return out;
}

}  // namespace qcc
