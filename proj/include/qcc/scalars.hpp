#pragma once

// Exact coefficient field K = Q(zeta_N)(v) with v^2 = q, and truncated
// Laurent series in a formal regularization parameter eps over K.

#include <gmpxx.h>

#include <algorithm>
#include <climits>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qcc {

using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// Raised when a classical or eps limit runs into a genuine pole.
struct PoleSignal {
  int order = 0;  ///< order of the pole (positive)
};

/// Raised when an eps series was not expanded far enough to decide a limit.
class InconclusiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// Exact division of integer polynomials by a monic divisor.
inline std::vector<mpz_class> polyDivZ(std::vector<mpz_class> a, const std::vector<mpz_class>& b) {
  std::vector<mpz_class> quo(a.size() - b.size() + 1);
  for (std::size_t k = quo.size(); k-- > 0;) {
    quo[k] = a[k + b.size() - 1];
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= quo[k] * b[j];
  }
  return quo;
}

inline std::vector<mpz_class> computeCyclotomic(int n) {
  std::vector<mpz_class> num(n + 1);
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    num = polyDivZ(num, computeCyclotomic(d));
  }
  return num;
}

}  // namespace detail

/// Coefficients of the N-th cyclotomic polynomial, lowest degree first.
inline const std::vector<mpz_class>& cyclotomicPolynomial(int n) {
  static std::mutex guard;
  static std::map<int, std::vector<mpz_class>> table;
  std::lock_guard<std::mutex> lock(guard);
  auto it = table.find(n);
  if (it == table.end()) it = table.emplace(n, detail::computeCyclotomic(n)).first;
  return it->second;
}

/// Element of Q(zeta_N) in the power basis of Q[x]/Phi_N.
///
/// Order 0 marks a rational constant that combines with any order.
class Cyclotomic {
 public:
  Cyclotomic() = default;
  Cyclotomic(long value) : coeffs_{mpq_class(value)} { trim(); }  // NOLINT
  Cyclotomic(const mpq_class& value) : coeffs_{value} { trim(); }  // NOLINT
  Cyclotomic(int order, std::vector<mpq_class> coeffs) : order_(order), coeffs_(std::move(coeffs)) { reduce(); }

  /// zeta_N^k.
  static Cyclotomic rootOfUnity(int order, long k) {
    if (order <= 0) throw std::domain_error("cyclotomic order must be positive");
    long e = ((k % order) + order) % order;
    std::vector<mpq_class> c(e + 1);
    c[e] = 1;
    return Cyclotomic(order, std::move(c));
  }

  int order() const { return order_; }
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }
  bool isZero() const { return coeffs_.empty(); }
  bool isRational() const { return coeffs_.size() <= 1; }
  bool isOne() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }
  mpq_class rationalValue() const {
    if (!isRational()) throw std::domain_error("cyclotomic value is not rational");
    return coeffs_.empty() ? mpq_class(0) : coeffs_[0];
  }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  Cyclotomic operator-() const {
    Cyclotomic r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  Cyclotomic& operator+=(const Cyclotomic& b) {
    order_ = joinOrder(order_, b.order_);
    if (coeffs_.size() < b.coeffs_.size()) coeffs_.resize(b.coeffs_.size());
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) coeffs_[i] += b.coeffs_[i];
    trim();
    return *this;
  }
  Cyclotomic& operator-=(const Cyclotomic& b) { return *this += -b; }
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    Cyclotomic r;
    r.order_ = joinOrder(a.order_, b.order_);
    if (a.isZero() || b.isZero()) return r;
    if (a.coeffs_.size() == 1 || b.coeffs_.size() == 1) {
      const auto& s = a.coeffs_.size() == 1 ? a : b;
      const auto& o = a.coeffs_.size() == 1 ? b : a;
      r.coeffs_ = o.coeffs_;
      for (auto& c : r.coeffs_) c *= s.coeffs_[0];
      return r;
    }
    r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    r.reduce();
    return r;
  }
  Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }

  Cyclotomic inverse() const {
    if (isZero()) throw std::domain_error("inverse of zero cyclotomic");
    if (isRational()) {
      Cyclotomic r(mpq_class(1) / coeffs_[0]);
      r.order_ = order_;
      return r;
    }
    // Extended Euclid in Q[x] against Phi_N.
    const auto& phi = cyclotomicPolynomial(order_);
    std::vector<mpq_class> r0(phi.begin(), phi.end()), r1 = coeffs_;
    std::vector<mpq_class> s0{0}, s1{1};
    while (!(r1.size() == 1)) {
      auto [quo, rem] = divmod(r0, r1);
      auto s2 = sub(s0, mul(quo, s1));
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    for (auto& c : s1) c /= r1[0];
    return Cyclotomic(order_, std::move(s1));
  }
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

  /// Lexicographic comparison used only for deterministic ordering.
  friend bool operator<(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.coeffs_.size() != b.coeffs_.size()) return a.coeffs_.size() < b.coeffs_.size();
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      if (a.coeffs_[i] != b.coeffs_[i]) return a.coeffs_[i] < b.coeffs_[i];
    return false;
  }

  std::string str() const {
    if (isZero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      if (!first) out << " + ";
      first = false;
      out << coeffs_[i].get_str();
      if (i > 0) out << "*z^" << i;
    }
    return out.str();
  }

  static int joinOrder(int a, int b) {
    if (a == 0) return b;
    if (b == 0 || a == b) return a;
    throw std::domain_error("mixing cyclotomic fields of different order");
  }

 private:
  void trim() {
    for (auto& c : coeffs_) c.canonicalize();
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  void reduce() {
    trim();
    if (order_ > 0) {
      const auto& phi = cyclotomicPolynomial(order_);
      std::size_t deg = phi.size() - 1;
      for (std::size_t k = coeffs_.size(); k-- > deg;) {
        if (coeffs_[k] == 0) continue;
        mpq_class lead = coeffs_[k];
        for (std::size_t j = 0; j <= deg; ++j) coeffs_[k - deg + j] -= lead * phi[j];
      }
      if (coeffs_.size() > deg) coeffs_.resize(deg);
    }
    trim();
  }
  static std::vector<mpq_class> mul(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<mpq_class> r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
  }
  static std::vector<mpq_class> sub(std::vector<mpq_class> a, const std::vector<mpq_class>& b) {
    if (a.size() < b.size()) a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
  }
  static std::pair<std::vector<mpq_class>, std::vector<mpq_class>> divmod(std::vector<mpq_class> a,
                                                                          const std::vector<mpq_class>& b) {
    std::vector<mpq_class> quo(a.size() >= b.size() ? a.size() - b.size() + 1 : 1);
    while (a.size() >= b.size() && !a.empty()) {
      std::size_t shift = a.size() - b.size();
      mpq_class f = a.back() / b.back();
      quo[shift] = f;
      for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= f * b[j];
      while (!a.empty() && a.back() == 0) a.pop_back();
    }
    while (!quo.empty() && quo.back() == 0) quo.pop_back();
    return {quo, a};
  }

  int order_ = 0;
  std::vector<mpq_class> coeffs_;
};

/// Finitely supported Laurent polynomial in v with cyclotomic coefficients.
class LaurentV {
 public:
  LaurentV() = default;
  LaurentV(const Cyclotomic& c) {  // NOLINT
    if (!c.isZero()) coeffs_.push_back(c);
  }
  LaurentV(long c) : LaurentV(Cyclotomic(c)) {}  // NOLINT
  LaurentV(int low, std::vector<Cyclotomic> coeffs) : low_(low), coeffs_(std::move(coeffs)) { trim(); }

  /// c * v^k.
  static LaurentV monomial(const Cyclotomic& c, int k) { return LaurentV(k, {c}); }

  bool isZero() const { return coeffs_.empty(); }
  int low() const { return low_; }
  int high() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }
  std::size_t length() const { return coeffs_.size(); }
  const std::vector<Cyclotomic>& coeffs() const { return coeffs_; }
  const Cyclotomic& lowCoeff() const { return coeffs_.front(); }
  const Cyclotomic& highCoeff() const { return coeffs_.back(); }
  Cyclotomic coeff(int k) const {
    if (k < low_ || k > high()) return Cyclotomic();
    return coeffs_[k - low_];
  }
  bool isMonomial() const { return coeffs_.size() == 1; }
  bool isOne() const { return coeffs_.size() == 1 && low_ == 0 && coeffs_[0].isOne(); }
  int order() const {
    int n = 0;
    for (const auto& c : coeffs_) n = Cyclotomic::joinOrder(n, c.order());
    return n;
  }

  friend bool operator==(const LaurentV& a, const LaurentV& b) {
    if (a.isZero() || b.isZero()) return a.isZero() && b.isZero();
    return a.low_ == b.low_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const LaurentV& a, const LaurentV& b) { return !(a == b); }

  LaurentV operator-() const {
    LaurentV r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  LaurentV& operator+=(const LaurentV& b) {
    if (b.isZero()) return *this;
    if (isZero()) return *this = b;
    int lo = std::min(low_, b.low_), hi = std::max(high(), b.high());
    std::vector<Cyclotomic> c(hi - lo + 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[low_ - lo + i] = coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[b.low_ - lo + i] += b.coeffs_[i];
    low_ = lo;
    coeffs_ = std::move(c);
    trim();
    return *this;
  }
  LaurentV& operator-=(const LaurentV& b) { return *this += -b; }
  friend LaurentV operator+(LaurentV a, const LaurentV& b) { return a += b; }
  friend LaurentV operator-(LaurentV a, const LaurentV& b) { return a -= b; }
  friend LaurentV operator*(const LaurentV& a, const LaurentV& b) {
    if (a.isZero() || b.isZero()) return LaurentV();
    std::vector<Cyclotomic> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return LaurentV(a.low_ + b.low_, std::move(c));
  }
  LaurentV& operator*=(const LaurentV& b) { return *this = *this * b; }
  LaurentV scaled(const Cyclotomic& s) const {
    if (s.isZero()) return LaurentV();
    LaurentV r = *this;
    for (auto& c : r.coeffs_) c *= s;
    return r;
  }
  LaurentV shifted(int k) const {
    LaurentV r = *this;
    r.low_ += k;
    return r;
  }

  /// Value at v = 1.
  Cyclotomic atOne() const {
    Cyclotomic s;
    for (const auto& c : coeffs_) s += c;
    return s;
  }
  /// Exact quotient by (v - 1); requires atOne() == 0.
  LaurentV dividedByVMinusOne() const {
    // p(v) = (v-1) r(v), p and r aligned at low_.
    std::vector<Cyclotomic> r(coeffs_.size() - 1);
    Cyclotomic acc;
    for (std::size_t i = 0; i + 1 < coeffs_.size(); ++i) {
      acc += coeffs_[i];
      r[i] = -acc;
    }
    return LaurentV(low_, std::move(r));
  }

  /// Polynomial division with remainder, both arguments viewed as polynomials in v shifted to low = 0.
  static std::pair<LaurentV, LaurentV> divmodPoly(const LaurentV& a, const LaurentV& b) {
    std::vector<Cyclotomic> rem = a.coeffs_;
    const auto& bc = b.coeffs_;
    if (rem.size() < bc.size()) return {LaurentV(), LaurentV(0, rem)};
    std::vector<Cyclotomic> quo(rem.size() - bc.size() + 1);
    Cyclotomic leadInv = bc.back().inverse();
    for (std::size_t k = quo.size(); k-- > 0;) {
      Cyclotomic f = rem[k + bc.size() - 1] * leadInv;
      quo[k] = f;
      if (f.isZero()) continue;
      for (std::size_t j = 0; j < bc.size(); ++j) rem[k + j] -= f * bc[j];
    }
    rem.resize(bc.size() - 1);
    return {LaurentV(0, std::move(quo)), LaurentV(0, std::move(rem))};
  }

  /// Monic gcd of the polynomial parts (v-power factors ignored).
  static LaurentV gcdPoly(LaurentV a, LaurentV b) {
    a.low_ = 0;
    b.low_ = 0;
    if (a.isZero()) return b.isZero() ? LaurentV(1) : b.monic();
    if (b.isZero()) return a.monic();
    if (a.length() < b.length()) std::swap(a, b);
    while (!b.isZero()) {
      if (b.length() == 1) return LaurentV(1);
      LaurentV r = divmodPoly(a, b).second;
      r.low_ = 0;
      a = std::move(b);
      b = r.isZero() ? r : r.monic();
    }
    return a.monic();
  }
  LaurentV monic() const { return LaurentV(0, coeffs_).scaled(coeffs_.back().inverse()); }

  friend bool operator<(const LaurentV& a, const LaurentV& b) {
    if (a.low_ != b.low_) return a.low_ < b.low_;
    if (a.coeffs_.size() != b.coeffs_.size()) return a.coeffs_.size() < b.coeffs_.size();
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      if (a.coeffs_[i] != b.coeffs_[i]) return a.coeffs_[i] < b.coeffs_[i];
    return false;
  }

  std::string str() const {
    if (isZero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i].isZero()) continue;
      if (!first) out << " + ";
      first = false;
      out << "(" << coeffs_[i].str() << ")";
      int e = low_ + static_cast<int>(i);
      if (e != 0) out << "*v^" << e;
    }
    return out.str();
  }

 private:
  void trim() {
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead].isZero()) ++lead;
    if (lead == coeffs_.size()) {
      coeffs_.clear();
      low_ = 0;
      return;
    }
    if (lead > 0) {
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
      low_ += static_cast<int>(lead);
    }
    while (coeffs_.back().isZero()) coeffs_.pop_back();
  }

  int low_ = 0;
  std::vector<Cyclotomic> coeffs_;
};

/// Reduced fraction of Laurent polynomials in v.
///
/// Canonical form: the denominator is a polynomial with nonzero constant
/// term equal to 1, and numerator and denominator share no factor.
class FieldElem {
 public:
  FieldElem() : den_(1) {}
  FieldElem(long c) : num_(c), den_(1) {}                  // NOLINT
  FieldElem(const Cyclotomic& c) : num_(c), den_(1) {}     // NOLINT
  FieldElem(const LaurentV& p) : num_(p), den_(1) {}       // NOLINT
  FieldElem(LaurentV num, LaurentV den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  /// q^{k/2} = v^k.
  static FieldElem vpow(int k) { return FieldElem(LaurentV::monomial(Cyclotomic(1L), k)); }
  static FieldElem qpow(const Rat& e) {
    Rat twice = e * 2;
    if (twice.get_den() != 1) throw std::domain_error("q-exponent is not half-integral");
    return vpow(static_cast<int>(twice.get_num().get_si()));
  }

  const LaurentV& num() const { return num_; }
  const LaurentV& den() const { return den_; }
  bool isZero() const { return num_.isZero(); }
  bool isOne() const { return num_.isOne() && den_.isOne(); }
  bool isLaurent() const { return den_.isOne(); }
  int order() const { return Cyclotomic::joinOrder(num_.order(), den_.order()); }

  friend bool operator==(const FieldElem& a, const FieldElem& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

  FieldElem operator-() const {
    FieldElem r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    if (a.isZero()) return b;
    if (b.isZero()) return a;
    if (a.den_.isOne() && b.den_.isOne()) return FieldElem(a.num_ + b.num_, Raw{});
    if (a.den_ == b.den_) return FieldElem(a.num_ + b.num_, a.den_);
    return FieldElem(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a + (-b); }
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    if (a.isZero() || b.isZero()) return FieldElem();
    if (a.den_.isOne() && b.den_.isOne()) return FieldElem(a.num_ * b.num_, Raw{});
    if (a.num_.isMonomial() && a.den_.isOne()) return b.timesMonomial(a.num_);
    if (b.num_.isMonomial() && b.den_.isOne()) return a.timesMonomial(b.num_);
    LaurentV g1 = LaurentV::gcdPoly(a.num_, b.den_);
    LaurentV g2 = LaurentV::gcdPoly(b.num_, a.den_);
    LaurentV an = exactDiv(a.num_, g1), bd = exactDiv(b.den_, g1);
    LaurentV bn = exactDiv(b.num_, g2), ad = exactDiv(a.den_, g2);
    FieldElem r;
    r.num_ = an * bn;
    r.den_ = ad * bd;
    r.canonicalize();
    return r;
  }
  FieldElem& operator+=(const FieldElem& b) { return *this = *this + b; }
  FieldElem& operator-=(const FieldElem& b) { return *this = *this - b; }
  FieldElem& operator*=(const FieldElem& b) { return *this = *this * b; }
  FieldElem& operator/=(const FieldElem& b) { return *this = *this / b; }

  FieldElem inverse() const {
    if (isZero()) throw std::domain_error("division by zero in K");
    FieldElem r;
    r.num_ = den_;
    r.den_ = num_;
    r.canonicalize();
    return r;
  }
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inverse(); }

  FieldElem pow(long e) const {
    FieldElem base = e < 0 ? inverse() : *this;
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    FieldElem r(1L);
    while (n) {
      if (n & 1UL) r *= base;
      base *= base;
      n >>= 1;
    }
    return r;
  }

  /// Total order used only for deterministic sorting.
  friend bool operator<(const FieldElem& a, const FieldElem& b) {
    if (a.num_ != b.num_) return a.num_ < b.num_;
    return a.den_ < b.den_;
  }

  std::string str() const {
    if (den_.isOne()) return num_.str();
    return "[" + num_.str() + "]/[" + den_.str() + "]";
  }

 private:
  struct Raw {};
  FieldElem(LaurentV num, Raw) : num_(std::move(num)), den_(1) {}

  static LaurentV exactDiv(const LaurentV& a, const LaurentV& g) {
    if (g.isOne()) return a;
    auto [quo, rem] = LaurentV::divmodPoly(a, g);
    return quo.shifted(a.low());
  }

  FieldElem timesMonomial(const LaurentV& m) const {
    FieldElem r;
    r.num_ = num_.scaled(m.lowCoeff()).shifted(m.low());
    r.den_ = den_;
    return r;
  }

  void normalize() {
    if (den_.isZero()) throw std::domain_error("zero denominator in K");
    if (num_.isZero()) {
      den_ = LaurentV(1);
      return;
    }
    LaurentV g = LaurentV::gcdPoly(num_, den_);
    if (!g.isOne()) {
      num_ = exactDiv(num_, g);
      den_ = exactDiv(den_, g);
    }
    canonicalize();
  }

  // Moves v-powers of the denominator into the numerator and scales the
  // denominator's constant term to 1. Assumes the fraction is reduced.
  void canonicalize() {
    if (num_.isZero()) {
      den_ = LaurentV(1);
      return;
    }
    int shift = den_.low();
    if (shift != 0) {
      den_ = den_.shifted(-shift);
      num_ = num_.shifted(-shift);
    }
    const Cyclotomic& c = den_.lowCoeff();
    if (!c.isOne()) {
      Cyclotomic inv = c.inverse();
      den_ = den_.scaled(inv);
      num_ = num_.scaled(inv);
    }
  }

  LaurentV num_;
  LaurentV den_;
};

inline std::ostream& operator<<(std::ostream& out, const FieldElem& x) { return out << x.str(); }

inline bool isZero(const FieldElem& x) { return x.isZero(); }

/// [z]_{q^d} = (q^{dz} - q^{-dz}) / (q^d - q^{-d}); 2dz and 2d must be integers.
inline FieldElem qnumBase(const Rat& z, const Rat& d) {
  Rat ez = z * d * 2, ed = d * 2;
  if (ez.get_den() != 1 || ed.get_den() != 1 || ed == 0)
    throw std::domain_error("q-number exponent is not half-integral");
  long a = ez.get_num().get_si(), b = ed.get_num().get_si();
  if (a == 0) return FieldElem();
  LaurentV num = LaurentV::monomial(1L, static_cast<int>(a)) - LaurentV::monomial(1L, static_cast<int>(-a));
  LaurentV den = LaurentV::monomial(1L, static_cast<int>(b)) - LaurentV::monomial(1L, static_cast<int>(-b));
  return FieldElem(num, den);
}

/// [z]_q = (q^z - q^{-z}) / (q - q^{-1}).
inline FieldElem qnum(const Rat& z) { return qnumBase(z, Rat(1)); }

/// [n]_{q^d}!.
inline FieldElem qfactorial(int n, const Rat& d = Rat(1)) {
  FieldElem r(1L);
  for (int k = 2; k <= n; ++k) r *= qnumBase(Rat(k), d);
  return r;
}

/// Gaussian binomial in base q^d.
inline FieldElem qbinomial(int n, int k, const Rat& d = Rat(1)) {
  return qfactorial(n, d) / (qfactorial(k, d) * qfactorial(n - k, d));
}

/// Value at q = 1 after cancelling common (v - 1) factors, or the pole order.
inline std::variant<Cyclotomic, PoleSignal> limitAtOne(const FieldElem& x) {
  LaurentV num = x.num(), den = x.den();
  int balance = 0;
  while (!num.isZero() && num.atOne().isZero()) {
    num = num.dividedByVMinusOne();
    ++balance;
  }
  while (den.atOne().isZero()) {
    den = den.dividedByVMinusOne();
    --balance;
  }
  if (balance < 0) return PoleSignal{-balance};
  if (balance > 0 || num.isZero()) return Cyclotomic();
  return num.atOne() / den.atOne();
}

/// Truncated Laurent series sum_{k < order} c_k eps^k with FieldElem coefficients.
///
/// Coefficients at exponents >= order() are unknown. Exact constants carry
/// order kExact.
class EpsSeries {
 public:
  static constexpr int kExact = INT_MAX / 4;

  EpsSeries() = default;
  EpsSeries(long c) : EpsSeries(FieldElem(c)) {}  // NOLINT
  EpsSeries(const FieldElem& c) {                 // NOLINT
    if (!c.isZero()) terms_.emplace(0, c);
  }
  EpsSeries(std::map<int, FieldElem> terms, int order) : terms_(std::move(terms)), order_(order) { clean(); }

  /// (1 + eps)^k known modulo eps^order.
  static EpsSeries binomialPower(long k, int order) {
    std::map<int, FieldElem> t;
    mpq_class c = 1;
    for (int j = 0; j < order; ++j) {
      if (c != 0) t.emplace(j, FieldElem(Cyclotomic(c)));
      c = c * mpq_class(k - j) / mpq_class(j + 1);
    }
    return EpsSeries(std::move(t), order);
  }
  /// eps^k exactly.
  static EpsSeries epsPower(int k) { return EpsSeries({{k, FieldElem(1L)}}, kExact); }

  int order() const { return order_; }
  const std::map<int, FieldElem>& terms() const { return terms_; }
  FieldElem coeff(int k) const {
    if (k >= order_) throw InconclusiveError("eps coefficient beyond truncation order");
    auto it = terms_.find(k);
    return it == terms_.end() ? FieldElem() : it->second;
  }
  /// Lowest exponent with a nonzero known coefficient, or order() if none.
  int valuation() const { return terms_.empty() ? order_ : terms_.begin()->first; }
  bool isZero() const { return terms_.empty(); }
  bool isExact() const { return order_ >= kExact; }

  EpsSeries operator-() const {
    EpsSeries r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
  }
  friend EpsSeries operator+(const EpsSeries& a, const EpsSeries& b) {
    EpsSeries r;
    r.order_ = std::min(a.order_, b.order_);
    r.terms_ = a.terms_;
    for (const auto& [k, c] : b.terms_) {
      auto it = r.terms_.find(k);
      if (it == r.terms_.end())
        r.terms_.emplace(k, c);
      else
        it->second += c;
    }
    r.clean();
    return r;
  }
  friend EpsSeries operator-(const EpsSeries& a, const EpsSeries& b) { return a + (-b); }
  friend EpsSeries operator*(const EpsSeries& a, const EpsSeries& b) {
    EpsSeries r;
    r.order_ = std::min(sat(a.order_, b.valuation()), sat(b.order_, a.valuation()));
    for (const auto& [i, ci] : a.terms_) {
      if (i + b.valuation() >= r.order_) break;
      for (const auto& [j, cj] : b.terms_) {
        if (i + j >= r.order_) break;
        auto& slot = r.terms_[i + j];
        slot += ci * cj;
      }
    }
    r.clean();
    return r;
  }
  friend EpsSeries operator*(const EpsSeries& a, const FieldElem& s) {
    if (s.isZero()) return EpsSeries();
    EpsSeries r = a;
    for (auto& [k, c] : r.terms_) c *= s;
    return r;
  }
  EpsSeries& operator+=(const EpsSeries& b) { return *this = *this + b; }
  EpsSeries& operator-=(const EpsSeries& b) { return *this = *this - b; }
  EpsSeries& operator*=(const EpsSeries& b) { return *this = *this * b; }
  EpsSeries& operator/=(const EpsSeries& b) { return *this = *this / b; }

  EpsSeries inverse() const {
    if (terms_.empty()) throw InconclusiveError("inverse of an eps series with no known nonzero term");
    int v = valuation();
    if (terms_.size() == 1 && isExact()) return EpsSeries({{-v, terms_.begin()->second.inverse()}}, kExact);
    if (isExact()) throw InconclusiveError("inverse of an exact non-monomial eps series needs a truncation order");
    int rel = order_ - v;  // known relative precision
    FieldElem u0inv = terms_.begin()->second.inverse();
    std::vector<FieldElem> unit(rel), inv(rel);
    for (const auto& [k, c] : terms_) unit[k - v] = c;
    inv[0] = u0inv;
    for (int n = 1; n < rel; ++n) {
      FieldElem acc;
      for (int j = 1; j <= n; ++j)
        if (!unit[j].isZero() && !inv[n - j].isZero()) acc += unit[j] * inv[n - j];
      inv[n] = -(acc * u0inv);
    }
    std::map<int, FieldElem> t;
    for (int n = 0; n < rel; ++n)
      if (!inv[n].isZero()) t.emplace(n - v, inv[n]);
    return EpsSeries(std::move(t), rel - v);
  }
  friend EpsSeries operator/(const EpsSeries& a, const EpsSeries& b) { return a * b.inverse(); }

  /// Equality up to the common known precision.
  friend bool operator==(const EpsSeries& a, const EpsSeries& b) { return (a - b).isZero(); }
  friend bool operator!=(const EpsSeries& a, const EpsSeries& b) { return !(a == b); }

  std::string str() const {
    if (terms_.empty()) return "O(eps^" + std::to_string(order_) + ")";
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      if (!first) out << " + ";
      first = false;
      out << "(" << c.str() << ")*eps^" << k;
    }
    if (!isExact()) out << " + O(eps^" << order_ << ")";
    return out.str();
  }

 private:
  static int sat(int a, int b) {
    long s = static_cast<long>(a) + b;
    return s >= kExact ? kExact : static_cast<int>(s);
  }
  void clean() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (it->second.isZero() || it->first >= order_)
        it = terms_.erase(it);
      else
        ++it;
    }
  }

  std::map<int, FieldElem> terms_;
  int order_ = kExact;
};

inline std::ostream& operator<<(std::ostream& out, const EpsSeries& x) { return out << x.str(); }

inline bool isZero(const EpsSeries& x) { return x.isZero(); }

/// eps^0 coefficient if no negative powers survive.
inline std::variant<FieldElem, PoleSignal> epsLimit(const EpsSeries& x) {
  if (x.order() <= 0) throw InconclusiveError("eps series truncated below order 1");
  int v = x.valuation();
  if (v < 0) return PoleSignal{-v};
  return x.coeff(0);
}

}  // namespace qcc
