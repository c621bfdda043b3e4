#pragma once

// Quasi-R-matrix, the matrix C, inverse Shapovalov matrix elements by Hasse
// path sums and by extremal lifting, admissible triples and Shapovalov
// elements with their regularity diagnostics.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qcc/uqcore.hpp"

namespace qcc {

/// Global weight basis of a finite module: (depth, index within the weight space).
template <class S>
class FlatBasis {
 public:
  explicit FlatBasis(const FiniteModule<S>& v) : module_(&v) {
    for (const auto& mu : v.depths())
      for (std::size_t k = 0; k < v.dim(mu); ++k) {
        pos_[{mu, k}] = entries_.size();
        entries_.emplace_back(mu, k);
      }
  }
  std::size_t size() const { return entries_.size(); }
  const RootVec& depth(std::size_t i) const { return entries_[i].first; }
  std::size_t local(std::size_t i) const { return entries_[i].second; }
  std::size_t index(const RootVec& mu, std::size_t k) const { return pos_.at({mu, k}); }
  EVec weight(std::size_t i) const { return module_->weightOf(depth(i)); }
  /// Indices whose weight is nu (epsilon coordinates).
  std::vector<std::size_t> ofWeight(const EVec& nu) const {
    std::vector<std::size_t> out;
    auto mu = module_->depthOf(nu);
    if (!mu) return out;
    for (std::size_t k = 0; k < module_->dim(*mu); ++k) out.push_back(index(*mu, k));
    return out;
  }
  /// True when v_i succeeds v_j: nu_i - nu_j in Gamma_+ \ {0}.
  bool succeeds(std::size_t i, std::size_t j) const {
    RootVec d = depth(j) - depth(i);
    return isNonnegative(d) && !isZeroVec(d);
  }

  /// Matrix of a word acting on the whole module.
  Matrix<S> wordOperator(const Word& w) const {
    Matrix<S> m(size(), size());
    for (std::size_t j = 0; j < size(); ++j) {
      std::vector<S> v(module_->dim(depth(j)));
      v[local(j)] = S(1L);
      RootVec end = depth(j);
      for (int l : w.letters) end = w.raising ? end - module_->roots().simple(l) : end + module_->roots().simple(l);
      if (!isNonnegative(end) || module_->dim(end) == 0) continue;
      auto y = applyWord(*module_, w, depth(j), v);
      for (std::size_t k = 0; k < y.size(); ++k)
        if (!isZero(y[k])) m(index(end, k), j) = y[k];
    }
    return m;
  }

 private:
  const FiniteModule<S>* module_;
  std::vector<std::pair<RootVec, std::size_t>> entries_;
  std::map<std::pair<RootVec, std::size_t>, std::size_t> pos_;
};

/// Theta = sum_mu Theta_mu, Theta_mu = sum_{a,b} X_ab E_a (x) F_b over the word bases of weight mu,
/// the unipotent part of the R-matrix: Theta Delta(x) = Delta-bar(x) Theta with
/// Delta-bar(e) = e (x) K^{-1} + 1 (x) e. The full R-matrix is q^{H} Theta.
class QuasiR {
 public:
  QuasiR(std::shared_ptr<const NilpotentAlgebra> alg, int depth)
      : alg_(std::move(alg)), depth_(depth), probe_(defaultProbe(alg_->roots())) {}
  QuasiR(std::shared_ptr<const NilpotentAlgebra> alg, int depth, EVec probe)
      : alg_(std::move(alg)), depth_(depth), probe_(std::move(probe)) {}

  const NilpotentAlgebra& algebra() const { return *alg_; }
  int depth() const { return depth_; }

  /// Coefficient matrix X at mu (rows: raising basis, columns: lowering basis).
  const Matrix<FieldElem>& component(const RootVec& mu) const {
    std::lock_guard<std::recursive_mutex> lock(guard_);
    auto it = cache_.find(mu);
    if (it != cache_.end()) return it->second.coefficients;
    if (height(mu) > depth_) throw std::out_of_range("depth overflow: quasi-R component beyond the configured depth");
    return cache_.emplace(mu, solveComponent(mu)).first->second.coefficients;
  }
  /// Dimension of the solution kernel at mu (0 means unique).
  std::size_t nullity(const RootVec& mu) const {
    component(mu);
    std::lock_guard<std::recursive_mutex> lock(guard_);
    return cache_.at(mu).nullity;
  }

  /// The probe highest weight used for the linear system (generic, antidominant).
  static EVec defaultProbe(const RootSystem& rs) { return Rat(-2) * rs.rho(); }

 private:
  struct Component {
    Matrix<FieldElem> coefficients;
    std::size_t nullity = 0;
  };

  Component solveComponent(const RootVec& mu) const {
    const auto& rs = alg_->roots();
    const auto& bmu = alg_->basis(mu);
    std::size_t d = bmu.dim();
    if (isZeroVec(mu)) return {Matrix<FieldElem>::identity(1), 0};
    MultWeight zeta = MultWeight::classical(rs, probe_);
    VermaModule<FieldElem> verma(alg_, zeta, depth_ + 1);
    Matrix<FieldElem> lhs(0, d);
    std::vector<std::vector<FieldElem>> rhs(d);  // per raising basis index a
    for (int k = 0; k < rs.rank(); ++k) {
      RootVec nu = mu - rs.simple(k);
      if (!isNonnegative(nu)) continue;
      const auto& raise = verma.raise(k, mu);
      for (std::size_t r = 0; r < raise.rows(); ++r) lhs.appendRow(raise.row(r));
      const auto& prev = component(nu);
      const auto& bnu = alg_->basis(nu);
      FieldElem kTop = zeta.pairing(rs, rs.simple(k));
      FieldElem kInv = zeta.minus(rs, nu).pairing(rs, rs.simple(k)).inverse();
      std::vector<std::vector<FieldElem>> block(d, std::vector<FieldElem>(bnu.dim()));
      for (std::size_t a2 = 0; a2 < bnu.dim(); ++a2) {
        Letters right = bnu.basis[a2];
        right.push_back(k);
        Letters left{k};
        left.insert(left.end(), bnu.basis[a2].begin(), bnu.basis[a2].end());
        auto nfRight = bmu.coordinates(right);
        auto nfLeft = bmu.coordinates(left);
        for (std::size_t b2 = 0; b2 < bnu.dim(); ++b2) {
          const FieldElem& x = prev(a2, b2);
          if (x.isZero()) continue;
          for (std::size_t a = 0; a < d; ++a) {
            FieldElem c = kTop * nfRight[a] - kInv * nfLeft[a];
            if (!c.isZero()) block[a][b2] += x * c;
          }
        }
      }
      for (std::size_t a = 0; a < d; ++a) rhs[a].insert(rhs[a].end(), block[a].begin(), block[a].end());
    }
    Component out{Matrix<FieldElem>(d, d), 0};
    for (std::size_t a = 0; a < d; ++a) {
      auto sol = solve(lhs, rhs[a]);
      if (!sol.consistent) throw std::logic_error("quasi-R intertwining system is inconsistent");
      out.nullity = sol.kernel.size();
      for (std::size_t b = 0; b < d; ++b) out.coefficients(a, b) = sol.particular[b];
    }
    if (out.nullity != 0) throw std::logic_error("quasi-R component is not unique: convention mismatch");
    return out;
  }

  std::shared_ptr<const NilpotentAlgebra> alg_;
  int depth_;
  EVec probe_;
  mutable std::recursive_mutex guard_;
  mutable std::map<RootVec, Component> cache_;
};

/// Theta on V (x) W as a matrix over the product basis (row-major: i * dim W + j).
inline Matrix<FieldElem> quasiRMatrix(const QuasiR& qr, const FiniteModule<FieldElem>& v,
                                      const FiniteModule<FieldElem>& w) {
  const auto& alg = qr.algebra();
  FlatBasis<FieldElem> fv(v), fw(w);
  std::size_t n = fv.size(), m = fw.size();
  Matrix<FieldElem> theta(n * m, n * m);
  int maxHeight = 0;
  for (const auto& mu : v.depths()) maxHeight = std::max(maxHeight, height(mu));
  for (const auto& mu : v.roots().cone(maxHeight)) {
    if (alg.basis(mu).dim() == 0) continue;
    const auto& x = qr.component(mu);
    const auto& b = alg.basis(mu);
    for (std::size_t a = 0; a < b.dim(); ++a) {
      auto ea = fv.wordOperator(Word{true, b.basis[a]});
      if (ea.isZero()) continue;
      for (std::size_t c = 0; c < b.dim(); ++c) {
        if (x(a, c).isZero()) continue;
        auto fb = fw.wordOperator(Word{false, b.basis[c]});
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t i2 = 0; i2 < n; ++i2) {
            if (ea(i, i2).isZero()) continue;
            FieldElem s = x(a, c) * ea(i, i2);
            for (std::size_t j = 0; j < m; ++j)
              for (std::size_t j2 = 0; j2 < m; ++j2)
                if (!fb(j, j2).isZero()) theta(i * m + j, i2 * m + j2) += s * fb(j, j2);
          }
      }
    }
  }
  return theta;
}

/// Full R-matrix q^{H} Theta on V (x) W.
inline Matrix<FieldElem> rMatrix(const QuasiR& qr, const FiniteModule<FieldElem>& v,
                                 const FiniteModule<FieldElem>& w) {
  FlatBasis<FieldElem> fv(v), fw(w);
  auto theta = quasiRMatrix(qr, v, w);
  std::size_t m = fw.size();
  for (std::size_t i = 0; i < fv.size(); ++i)
    for (std::size_t j = 0; j < m; ++j) {
      FieldElem h = FieldElem::qpow(dot(fv.weight(i), fw.weight(j)));
      for (std::size_t c = 0; c < theta.cols(); ++c)
        if (!theta(i * m + j, c).isZero()) theta(i * m + j, c) *= h;
    }
  return theta;
}

/// Checks R Delta(x) = Delta^op(x) R for the generators on V (x) V.
inline bool rMatrixIntertwines(const Matrix<FieldElem>& r, const FiniteModule<FieldElem>& v) {
  FlatBasis<FieldElem> fv(v);
  std::size_t n = fv.size();
  const auto& rs = v.roots();
  auto kron = [n](const Matrix<FieldElem>& a, const Matrix<FieldElem>& b) {
    Matrix<FieldElem> out(n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t i2 = 0; i2 < n; ++i2) {
        if (a(i, i2).isZero()) continue;
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t j2 = 0; j2 < n; ++j2)
            if (!b(j, j2).isZero()) out(i * n + j, i2 * n + j2) = a(i, i2) * b(j, j2);
      }
    return out;
  };
  for (int i = 0; i < rs.rank(); ++i) {
    auto e = fv.wordOperator(Word{true, {i}});
    auto f = fv.wordOperator(Word{false, {i}});
    Matrix<FieldElem> k(n, n), kinv(n, n);
    for (std::size_t a = 0; a < n; ++a) {
      k(a, a) = FieldElem::qpow(dot(fv.weight(a), rs.simpleE()[i]));
      kinv(a, a) = k(a, a).inverse();
    }
    auto id = Matrix<FieldElem>::identity(n);
    auto de = kron(e, k) + kron(id, e), deop = kron(k, e) + kron(e, id);
    auto df = kron(f, id) + kron(kinv, f), dfop = kron(id, f) + kron(f, kinv);
    if (!(r * de == deop * r) || !(r * df == dfop * r)) return false;
  }
  return true;
}

/// R12 R13 R23 = R23 R13 R12 on V (x) V (x) V.
inline bool yangBaxter(const Matrix<FieldElem>& r, std::size_t n) {
  std::size_t N = n * n * n;
  auto idx = [n](std::size_t a, std::size_t b, std::size_t c) { return (a * n + b) * n + c; };
  Matrix<FieldElem> r12(N, N), r23(N, N), r13(N, N);
  for (std::size_t row = 0; row < n * n; ++row)
    for (std::size_t col = 0; col < n * n; ++col) {
      const FieldElem& x = r(row, col);
      if (x.isZero()) continue;
      std::size_t a = row / n, b = row % n, a2 = col / n, b2 = col % n;
      for (std::size_t z = 0; z < n; ++z) {
        r12(idx(a, b, z), idx(a2, b2, z)) = x;
        r23(idx(z, a, b), idx(z, a2, b2)) = x;
        r13(idx(a, z, b), idx(a2, z, b2)) = x;
      }
    }
  return r12 * r13 * r23 == r23 * r13 * r12;
}

/// Entries c_ij of C = (Theta - 1 (x) 1)/(q - q^{-1}) with the left leg sent to End(V).
struct CMatrix {
  std::shared_ptr<const FiniteModule<FieldElem>> module;
  std::map<std::pair<std::size_t, std::size_t>, AlgElem<FieldElem>> entries;  ///< (i, j) with v_i above v_j

  const AlgElem<FieldElem>* find(std::size_t i, std::size_t j) const {
    auto it = entries.find({i, j});
    return it == entries.end() ? nullptr : &it->second;
  }
};

inline CMatrix cMatrix(const QuasiR& qr, std::shared_ptr<const FiniteModule<FieldElem>> v) {
  const auto& alg = qr.algebra();
  FlatBasis<FieldElem> fv(*v);
  CMatrix out;
  out.module = v;
  FieldElem scale = (FieldElem::qpow(1) - FieldElem::qpow(-1)).inverse();
  int maxHeight = 0;
  for (const auto& mu : v->depths()) maxHeight = std::max(maxHeight, height(mu));
  for (const auto& mu : v->roots().cone(maxHeight)) {
    if (isZeroVec(mu)) continue;
    const auto& b = alg.basis(mu);
    const auto& x = qr.component(mu);
    std::vector<Matrix<FieldElem>> ops;
    for (std::size_t a = 0; a < b.dim(); ++a) ops.push_back(fv.wordOperator(Word{true, b.basis[a]}));
    for (std::size_t i = 0; i < fv.size(); ++i)
      for (std::size_t j = 0; j < fv.size(); ++j) {
        if (fv.depth(j) - fv.depth(i) != mu) continue;
        AlgElem<FieldElem> c;
        c.weight = mu;
        c.coords.assign(b.dim(), FieldElem());
        for (std::size_t a = 0; a < b.dim(); ++a) {
          if (ops[a](i, j).isZero()) continue;
          for (std::size_t col = 0; col < b.dim(); ++col)
            if (!x(a, col).isZero()) c.coords[col] += x(a, col) * ops[a](i, j) * scale;
        }
        if (!c.isZero()) out.entries.emplace(std::make_pair(i, j), std::move(c));
      }
  }
  return out;
}

/// q^{eta_mu(zeta)} with eta_mu(zeta) = (mu, zeta + rho) - (mu, mu)/2.
template <class S>
S nodeExponential(const RootSystem& rs, const MultWeight& zeta, const RootVec& mu) {
  Rat rhoPart = dot(rs.toE(mu), rs.rho()) - rs.inner(mu, mu) / 2;
  return weightPairing<S>(rs, zeta, mu) * S(FieldElem::qpow(rhoPart));
}

/// Node factor -q^{eta}/[eta]_q.
template <class S>
S nodeFactor(const RootSystem& rs, const MultWeight& zeta, const RootVec& mu) {
  S e = nodeExponential<S>(rs, zeta, mu);
  S bracket = qBracket<S>(e, Rat(1));
  return -(e * bracket.inverse());
}

/// Inverse Shapovalov matrix elements of V at a weight zeta, by recursion and by explicit path sums.
template <class S>
class PathSum {
 public:
  PathSum(const CMatrix& c, MultWeight zeta)
      : c_(&c), basis_(*c.module), zeta_(std::move(zeta)), alg_(nullptr) {}

  void setAlgebra(std::shared_ptr<const NilpotentAlgebra> alg) { alg_ = std::move(alg); }

  /// check-s_{ba} = c_ba + sum_c c_bc s_ca.
  AlgElem<S> checkS(std::size_t b, std::size_t a) const {
    requireOrder(b, a);
    RootVec mu = basis_.depth(a) - basis_.depth(b);
    AlgElem<S> acc = lifted(b, a, mu);
    for (std::size_t c = 0; c < basis_.size(); ++c) {
      if (!basis_.succeeds(b, c) || !basis_.succeeds(c, a)) continue;
      const auto* cbc = c_->find(b, c);
      if (!cbc) continue;
      acc = acc + multiply(algebra(), liftElem(*cbc), s(c, a));
    }
    return acc;
  }

  /// Matrix entry s_ca = node factor times check-s_ca.
  AlgElem<S> s(std::size_t c, std::size_t a) const {
    std::lock_guard<std::recursive_mutex> lock(guard_);
    auto it = memo_.find({c, a});
    if (it != memo_.end()) return it->second;
    RootVec mu = basis_.depth(a) - basis_.depth(c);
    AlgElem<S> r = scale(checkS(c, a), nodeFactor<S>(algebra().roots(), zeta_, mu));
    return memo_.emplace(std::make_pair(c, a), r).first->second;
  }

  /// Explicit sum over chains v_b > v_k > ... > v_1 > v_a along nonzero c-entries.
  AlgElem<S> pathSum(std::size_t b, std::size_t a) const {
    requireOrder(b, a);
    RootVec mu = basis_.depth(a) - basis_.depth(b);
    AlgElem<S> total;
    total.weight = mu;
    total.coords.assign(algebra().basis(mu).dim(), S());
    // chains ending at a: value(node) = sum over chains from node down to a of c-products and factors
    std::function<void(std::size_t, AlgElem<S>, S)> walk = [&](std::size_t top, AlgElem<S> prod, S factors) {
      // prod = c_{b k} ... c_{. top}; try closing at a, or stepping down to an intermediate node
      if (const auto* last = c_->find(top, a)) {
        auto full = multiply(algebra(), prod, liftElem(*last));
        total = total + scale(full, factors);
      }
      for (std::size_t next = 0; next < basis_.size(); ++next) {
        if (!basis_.succeeds(top, next) || !basis_.succeeds(next, a)) continue;
        const auto* edge = c_->find(top, next);
        if (!edge) continue;
        RootVec nodeMu = basis_.depth(a) - basis_.depth(next);
        walk(next, multiply(algebra(), prod, liftElem(*edge)),
             factors * nodeFactor<S>(algebra().roots(), zeta_, nodeMu));
      }
    };
    walk(b, AlgElem<S>::one(algebra()), S(1L));
    return total;
  }

  const FlatBasis<FieldElem>& basis() const { return basis_; }
  const MultWeight& zeta() const { return zeta_; }

 private:
  const NilpotentAlgebra& algebra() const {
    if (!alg_) throw std::logic_error("path sum needs the lowering algebra");
    return *alg_;
  }
  void requireOrder(std::size_t b, std::size_t a) const {
    if (!basis_.succeeds(b, a)) throw std::invalid_argument("matrix element needs v_b above v_a");
  }
  AlgElem<S> liftElem(const AlgElem<FieldElem>& x) const {
    AlgElem<S> r;
    r.raising = x.raising;
    r.weight = x.weight;
    r.coords = liftVector<S>(x.coords);
    return r;
  }
  AlgElem<S> lifted(std::size_t b, std::size_t a, const RootVec& mu) const {
    if (const auto* c = c_->find(b, a)) return liftElem(*c);
    AlgElem<S> z;
    z.weight = mu;
    z.coords.assign(algebra().basis(mu).dim(), S());
    return z;
  }

  const CMatrix* c_;
  FlatBasis<FieldElem> basis_;
  MultWeight zeta_;
  std::shared_ptr<const NilpotentAlgebra> alg_;
  mutable std::recursive_mutex guard_;
  mutable std::map<std::pair<std::size_t, std::size_t>, AlgElem<S>> memo_;
};

/// Extremal vector u in V (x) M_zeta with u = v_a (x) 1 + higher terms and e_i u = 0.
template <class S>
struct ExtremalLift {
  bool unique = false;
  std::map<std::size_t, std::vector<S>> column;  ///< global V index -> Verma coordinates of its tensor factor
};

template <class S>
ExtremalLift<S> extremalLift(std::shared_ptr<const NilpotentAlgebra> alg, const FiniteModule<FieldElem>& v,
                             std::size_t a, const MultWeight& zeta) {
  auto vs = v.template convert<S>();
  FlatBasis<FieldElem> fv(v);
  auto verma = std::make_shared<VermaModule<S>>(alg, zeta);
  TensorModule<S> tensor(vs, verma);
  const RootVec& depth = fv.depth(a);
  std::size_t n = tensor.dim(depth);
  std::size_t fixed = n;
  for (const auto& blk : tensor.blocks(depth))
    if (blk.mu1 == depth) fixed = TensorModule<S>::index(blk, fv.local(a), 0);
  if (fixed == n) throw std::logic_error("v_a (x) 1 missing from the tensor weight space");
  Matrix<S> system(0, n - 1);
  std::vector<S> rhs;
  for (int k = 0; k < v.roots().rank(); ++k) {
    const auto& e = tensor.raise(k, depth);
    for (std::size_t r = 0; r < e.rows(); ++r) {
      std::vector<S> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != fixed) row.push_back(e(r, c));
      system.appendRow(row);
      rhs.push_back(-e(r, fixed));
    }
  }
  ExtremalLift<S> out;
  std::vector<S> u(n);
  u[fixed] = S(1L);
  if (system.rows() > 0) {
    auto sol = solve(system, rhs);
    if (!sol.consistent) throw std::logic_error("no extremal lift");
    out.unique = sol.kernel.empty();
    for (std::size_t c = 0, k = 0; c < n; ++c)
      if (c != fixed) u[c] = sol.particular[k++];
  } else {
    out.unique = true;
  }
  for (const auto& blk : tensor.blocks(depth))
    for (std::size_t l = 0; l < blk.d1; ++l) {
      std::vector<S> y(blk.d2);
      for (std::size_t c = 0; c < blk.d2; ++c) y[c] = u[TensorModule<S>::index(blk, l, c)];
      out.column[fv.index(blk.mu1, l)] = y;
    }
  return out;
}

/// (V, v_a, v_b) with e_alpha v_b = 0 on the support of beta, v_a = f_beta v_b, (beta^vee, nu_b) = 1.
struct AdmissibleTriple {
  RootVec beta;
  std::string moduleName;  ///< "natural" or "spin"
  std::shared_ptr<const FiniteModule<FieldElem>> module;
  std::size_t b = 0, a = 0;  ///< global indices in FlatBasis order
  EVec nuB, nuA;
};

inline AdmissibleTriple admissibleTriple(std::shared_ptr<const NilpotentAlgebra> alg, const RootVec& beta) {
  const auto& rs = alg->roots();
  if (!rs.isPositiveRoot(beta)) throw std::invalid_argument("not a positive root");
  EVec be = rs.toE(beta);
  int dim = rs.dimE();
  std::vector<int> plus, minus;
  for (int k = 0; k < dim; ++k) {
    if (be[k] > 0) plus.push_back(k);
    if (be[k] < 0) minus.push_back(k);
  }
  AdmissibleTriple t;
  t.beta = beta;
  EVec nuB(dim, Rat(0)), nuA(dim, Rat(0));
  bool spin = false;
  if (rs.type() == RootType::A) {
    nuB[plus.at(0)] = 1;
    nuA[minus.at(0)] = 1;
  } else if (plus.size() == 1 && minus.size() == 1) {  // eps_i - eps_j
    nuB[plus[0]] = 1;
    nuA[minus[0]] = 1;
  } else if (plus.size() == 2) {  // eps_i + eps_j
    nuB[plus[0]] = 1;
    nuA[plus[1]] = -1;
  } else if (plus.size() == 1 && be[plus[0]] == 2) {  // 2 eps_i
    nuB[plus[0]] = 1;
    nuA[plus[0]] = -1;
  } else if (plus.size() == 1 && rs.type() == RootType::B) {  // short eps_i
    spin = true;
    nuB = spinHighestWeight(rs);
    nuA = nuB - be;
  } else {
    throw std::invalid_argument("unsupported root for an admissible triple");
  }
  t.moduleName = spin ? "spin" : "natural";
  t.module = finiteModule<FieldElem>(alg, spin ? spinHighestWeight(rs) : naturalHighestWeight(rs));
  FlatBasis<FieldElem> fv(*t.module);
  auto ib = fv.ofWeight(nuB), ia = fv.ofWeight(nuA);
  if (ib.size() != 1 || ia.size() != 1) throw std::logic_error("admissible weights are not simple weights of the module");
  t.b = ib[0];
  t.a = ia[0];
  t.nuB = nuB;
  t.nuA = nuA;
  // Re-verify the defining properties.
  Rat pairing = rs.coroot(nuB, beta);
  if (pairing != 1) throw std::logic_error("(beta^vee, nu_b) != 1");
  for (int i = 0; i < rs.rank(); ++i) {
    if (beta[i] == 0) continue;
    auto e = fv.wordOperator(Word{true, {i}});
    for (std::size_t r = 0; r < fv.size(); ++r)
      if (!e(r, t.b).isZero()) throw std::logic_error("v_b is not extremal for the support of beta");
  }
  return t;
}

/// Classical (q = 1) root vector f_beta as iterated commutators along a convex order.
inline AlgElem<FieldElem> classicalRootVector(std::shared_ptr<const NilpotentAlgebra> classical,
                                              const std::vector<RootVec>& order, const RootVec& beta) {
  const auto& rs = classical->roots();
  std::function<AlgElem<FieldElem>(std::size_t)> build = [&](std::size_t j) -> AlgElem<FieldElem> {
    int si = rs.simpleIndex(order[j]);
    if (si >= 0) return AlgElem<FieldElem>::fromWord(*classical, Word{false, {si}});
    for (std::size_t i = 0; i < j; ++i)
      for (std::size_t l = j + 1; l < order.size(); ++l) {
        if (order[i] + order[l] != order[j]) continue;
        auto fa = build(i), fb = build(l);
        return multiply(*classical, fb, fa) + scale(multiply(*classical, fa, fb), FieldElem(-1L));
      }
    throw std::logic_error("no convex split for a compound root");
  };
  for (std::size_t j = 0; j < order.size(); ++j)
    if (order[j] == beta) return build(j);
  throw std::invalid_argument("root missing from the convex order");
}

/// Rewrites q = 1 limits of quantum-basis coordinates in the classical word basis.
inline std::optional<std::vector<FieldElem>> classicalCoordinates(const NilpotentAlgebra& quantum,
                                                                  const NilpotentAlgebra& classical,
                                                                  const AlgElem<FieldElem>& x) {
  const auto& qb = quantum.basis(x.weight);
  std::vector<FieldElem> out(classical.basis(x.weight).dim());
  for (std::size_t k = 0; k < x.coords.size(); ++k) {
    auto lim = limitAtOne(x.coords[k]);
    if (std::holds_alternative<PoleSignal>(lim)) return std::nullopt;
    FieldElem c(std::get<Cyclotomic>(lim));
    if (c.isZero()) continue;
    auto nf = classical.normalForm(qb.basis[k]);
    for (std::size_t r = 0; r < nf.size(); ++r)
      if (!nf[r].isZero()) out[r] += c * nf[r];
  }
  return out;
}

/// Scalar r with x = r y when both are nonzero and proportional.
inline std::optional<FieldElem> proportionality(const std::vector<FieldElem>& x, const std::vector<FieldElem>& y) {
  std::optional<FieldElem> r;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (y[k].isZero()) {
      if (!x[k].isZero()) return std::nullopt;
      continue;
    }
    FieldElem c = x[k] / y[k];
    if (r && !(*r == c)) return std::nullopt;
    r = c;
  }
  if (!r || r->isZero()) return std::nullopt;
  return r;
}

/// Evaluates an eps-series element at eps = 0, or reports the pole order.
inline std::variant<AlgElem<FieldElem>, PoleSignal> epsLimit(const AlgElem<EpsSeries>& x) {
  AlgElem<FieldElem> r;
  r.raising = x.raising;
  r.weight = x.weight;
  int worst = 0;
  for (const auto& c : x.coords) {
    auto l = epsLimit(c);
    if (std::holds_alternative<PoleSignal>(l)) {
      worst = std::max(worst, std::get<PoleSignal>(l).order);
      r.coords.push_back(FieldElem());
    } else {
      r.coords.push_back(std::get<FieldElem>(l));
    }
  }
  if (worst > 0) return PoleSignal{worst};
  return r;
}

inline int minValuation(const AlgElem<EpsSeries>& x) {
  int v = EpsSeries::kExact;
  for (const auto& c : x.coords)
    if (!c.isZero()) v = std::min(v, c.valuation());
  return v;
}

struct ShapovalovElt {
  RootVec beta;
  int m = 1;
  MultWeight zeta;
  AlgElem<FieldElem> value;            ///< weight m beta
  std::vector<int> factorValuations;   ///< lowest eps power in each eps-regularized factor
  bool extremal = false;               ///< e_i phi 1_zeta = 0 for all i
  std::optional<FieldElem> classicalRatio;  ///< q -> 1 limit / (classical f_beta)^m
};

/// Context shared by Shapovalov element computations for one root system.
class ShapovalovEngine {
 public:
  ShapovalovEngine(std::shared_ptr<const NilpotentAlgebra> alg, int epsOrder = 6)
      : alg_(std::move(alg)),
        classical_(std::make_shared<NilpotentAlgebra>(alg_->roots(), true)),
        epsOrder_(epsOrder) {}

  const NilpotentAlgebra& algebra() const { return *alg_; }
  std::shared_ptr<const NilpotentAlgebra> algebraPtr() const { return alg_; }
  std::shared_ptr<const NilpotentAlgebra> classical() const { return classical_; }
  int epsOrder() const { return epsOrder_; }

  const AdmissibleTriple& triple(const RootVec& beta) const {
    std::lock_guard<std::recursive_mutex> lock(guard_);
    auto it = triples_.find(beta);
    if (it != triples_.end()) return it->second;
    return triples_.emplace(beta, admissibleTriple(alg_, beta)).first->second;
  }

  const QuasiR& quasiR(int depth) const {
    std::lock_guard<std::recursive_mutex> lock(guard_);
    if (!quasiR_ || quasiR_->depth() < depth) quasiR_ = std::make_shared<QuasiR>(alg_, depth);
    return *quasiR_;
  }

  const CMatrix& cMatrixFor(const AdmissibleTriple& t) const {
    std::lock_guard<std::recursive_mutex> lock(guard_);
    auto key = t.moduleName;
    auto it = cmats_.find(key);
    if (it != cmats_.end()) return it->second;
    int h = 0;
    for (const auto& mu : t.module->depths()) h = std::max(h, height(mu));
    return cmats_.emplace(key, cMatrix(quasiR(h), t.module)).first->second;
  }

  /// eps-shift along the sum of fundamental weights.
  MultWeight regularized(const MultWeight& zeta) const { return zeta.withShift(alg_->roots().rho(), epsOrder_); }

  /// phi_beta(zeta) = check-s_ba(zeta) over eps-series.
  AlgElem<EpsSeries> phiSeries(const RootVec& beta, const MultWeight& zeta) const {
    const auto& t = triple(beta);
    PathSum<EpsSeries> ps(cMatrixFor(t), regularized(zeta));
    ps.setAlgebra(alg_);
    return ps.checkS(t.b, t.a);
  }

  /// True when q^{2(zeta + rho, beta)} = q^{m (beta, beta)}.
  bool kacKazhdan(const MultWeight& zeta, const RootVec& beta, int m) const {
    const auto& rs = alg_->roots();
    FieldElem lhs = zeta.pairing(rs, beta).pow(2) * FieldElem::qpow(2 * dot(rs.rho(), rs.toE(beta)));
    return lhs == FieldElem::qpow(Rat(m) * rs.inner(beta, beta));
  }

  ShapovalovElt element(const RootVec& beta, int m, const MultWeight& zeta) const {
    const auto& rs = alg_->roots();
    if (m < 1) throw std::invalid_argument("degree must be positive");
    if (!kacKazhdan(zeta, beta, m)) throw std::invalid_argument("weight violates the Kac-Kazhdan relation");
    ShapovalovElt out;
    out.beta = beta;
    out.m = m;
    out.zeta = zeta;
    int si = rs.simpleIndex(beta);
    if (si >= 0) {
      out.value = AlgElem<FieldElem>::fromWord(*alg_, Word{false, Letters(static_cast<std::size_t>(m), si)});
    } else {
      const auto& t = triple(beta);
      AlgElem<EpsSeries> product = AlgElem<EpsSeries>::one(*alg_);
      MultWeight zk = zeta;
      for (int k = 0; k < m; ++k) {
        auto phi = phiSeries(beta, zk);
        out.factorValuations.push_back(minValuation(phi));
        product = multiply(*alg_, phi, product);
        zk = zk.plus(t.nuA);
      }
      auto lim = epsLimit(product);
      if (std::holds_alternative<PoleSignal>(lim))
        throw std::domain_error("Shapovalov element not regular at this q: eps pole of order " +
                                std::to_string(std::get<PoleSignal>(lim).order));
      out.value = std::get<AlgElem<FieldElem>>(lim);
    }
    out.extremal = isExtremal(out.value, zeta);
    if (!out.extremal) throw std::logic_error("Shapovalov element fails the extremality check: convention error");
    out.classicalRatio = classicalRatio(out.value, beta, m);
    return out;
  }

  bool isExtremal(const AlgElem<FieldElem>& x, const MultWeight& zeta) const {
    VermaModule<FieldElem> verma(alg_, zeta);
    if (x.isZero()) return false;
    for (int i = 0; i < alg_->roots().rank(); ++i) {
      RootVec below = x.weight - alg_->roots().simple(i);
      if (!isNonnegative(below)) continue;
      if (!isZeroVector(mulVec(verma.raise(i, x.weight), x.coords))) return false;
    }
    return true;
  }

  std::optional<FieldElem> classicalRatio(const AlgElem<FieldElem>& x, const RootVec& beta, int m) const {
    auto limit = classicalCoordinates(*alg_, *classical_, x);
    if (!limit) return std::nullopt;
    auto order = convexOrder(alg_->roots(), false);
    auto fb = classicalRootVector(classical_, order, beta);
    auto power = AlgElem<FieldElem>::one(*classical_);
    for (int k = 0; k < m; ++k) power = multiply(*classical_, power, fb);
    return proportionality(*limit, power.coords);
  }

 private:
  std::shared_ptr<const NilpotentAlgebra> alg_;
  std::shared_ptr<const NilpotentAlgebra> classical_;
  int epsOrder_;
  mutable std::recursive_mutex guard_;
  mutable std::map<RootVec, AdmissibleTriple> triples_;
  mutable std::shared_ptr<QuasiR> quasiR_;
  mutable std::map<std::string, CMatrix> cmats_;
};

/// One intermediate node of the Hasse interval between v_b and v_a.
struct NodeReport {
  EVec weight;
  RootVec mu;                 ///< nu_c - nu_a
  bool singular = false;      ///< mu(t) = 1
  bool rootSplitting = false; ///< nu_b - nu_c and nu_c - nu_a are both roots
  bool regularAtOne = false;  ///< s_ca(zeta, q) has no pole at q = 1
  bool vanishesAtOne = false; ///< s_ca(zeta, 1) = 0
};

struct QuantizabilityReport {
  RootVec beta;
  int m = 1;
  std::vector<NodeReport> nodes;
  bool classicalLimit = false;  ///< lim phi_{m beta} is proportional to f_beta^m
  std::optional<FieldElem> classicalRatio;
  bool divisibilityChecked = false;
  bool divisible = false;  ///< check-s_{j,-j} / d_j regular at q = 1
  bool regular = false;    ///< every intermediate s_ca regular and vanishing at q = 1
};

inline QuantizabilityReport quantizabilityCheck(const ShapovalovEngine& eng, const TorusPoint& t,
                                                const MultWeight& zeta, const RootVec& beta, int m) {
  const auto& rs = eng.algebra().roots();
  QuantizabilityReport rep;
  rep.beta = beta;
  rep.m = m;
  const auto& tr = eng.triple(beta);
  const auto& cm = eng.cMatrixFor(tr);
  PathSum<EpsSeries> ps(cm, eng.regularized(zeta));
  ps.setAlgebra(eng.algebraPtr());
  const auto& fb = ps.basis();
  auto regularAndVanishing = [](const AlgElem<FieldElem>& x, bool& regular, bool& vanishes) {
    regular = true;
    vanishes = true;
    for (const auto& c : x.coords) {
      auto l = limitAtOne(c);
      if (std::holds_alternative<PoleSignal>(l)) {
        regular = false;
        vanishes = false;
        return;
      }
      if (!std::get<Cyclotomic>(l).isZero()) vanishes = false;
    }
  };
  rep.regular = true;
  for (std::size_t c = 0; c < fb.size(); ++c) {
    if (!fb.succeeds(tr.b, c) || !fb.succeeds(c, tr.a)) continue;
    NodeReport node;
    node.weight = fb.weight(c);
    node.mu = fb.depth(tr.a) - fb.depth(c);
    node.singular = t.exponent(rs.toE(node.mu)) == 0;
    node.rootSplitting = rs.isRoot(fb.depth(c) - fb.depth(tr.b)) && rs.isRoot(node.mu);
    auto sca = epsLimit(ps.s(c, tr.a));
    if (std::holds_alternative<AlgElem<FieldElem>>(sca))
      regularAndVanishing(std::get<AlgElem<FieldElem>>(sca), node.regularAtOne, node.vanishesAtOne);
    rep.regular = rep.regular && node.regularAtOne && node.vanishesAtOne;
    // Orthogonal long root eps_i + eps_j: cancellation at the node v_j.
    if (node.singular && (rs.type() == RootType::D || rs.type() == RootType::B)) {
      EVec be = rs.toE(beta);
      bool longSum = true;
      for (const auto& x : be) longSum = longSum && (x == 0 || x == 1);
      if (longSum && std::holds_alternative<AlgElem<FieldElem>>(sca)) {
        auto check = epsLimit(ps.checkS(c, tr.a));
        if (std::holds_alternative<AlgElem<FieldElem>>(check)) {
          const auto& cs = std::get<AlgElem<FieldElem>>(check);
          FieldElem eta = std::get<FieldElem>(epsLimit(nodeExponential<EpsSeries>(rs, eng.regularized(zeta), node.mu)));
          FieldElem dj = rs.type() == RootType::D ? eta.pow(2) - FieldElem(1L) : eta + FieldElem(1L);
          rep.divisibilityChecked = true;
          rep.divisible = !dj.isZero();
          for (const auto& x : cs.coords) {
            if (x.isZero()) continue;
            if (std::holds_alternative<PoleSignal>(limitAtOne(x / dj))) rep.divisible = false;
          }
        }
      }
    }
    rep.nodes.push_back(node);
  }
  auto elt = eng.element(beta, m, zeta);
  rep.classicalRatio = elt.classicalRatio;
  rep.classicalLimit = elt.classicalRatio.has_value();
  return rep;
}

}  // namespace qcc
